import pytest

from khovanov.complex import ChainComplex
from khovanov.diagram import parse_pd
from khovanov.homology import AbelianGroupPresentation
from khovanov.polyring import (JWindow, ZcComplex, zc_check_d_squared, zc_differential_matrix,
                               zc_homology_table)
from khovanov.linalg import SparseIntegerMatrix

from conftest import KINK_NEG, KINK_POS


def test_window_validation():
    with pytest.raises(ValueError):
        JWindow(3, 1)
    with pytest.raises(ValueError):
        zc_differential_matrix(parse_pd("O 1"), 0, 11, JWindow(-1, 9))


@pytest.mark.parametrize("name", ["hopf", "trefoil-right", "figure-eight"])
def test_power_zero_block_is_ordinary_differential(corpus, name):
    d = corpus[name]
    zc, cx = ZcComplex(d), ChainComplex(d)
    for cell in cx.cells:
        m = zc.matrix(cell)
        cols = [c for c, (k, _) in enumerate(zc.generators(cell)) if k == 0]
        rows = [r for r, (k, _) in enumerate(zc.generators((cell[0] + 1, cell[1]))) if k == 0]
        rpos = {r: n for n, r in enumerate(rows)}
        cpos = {c: n for n, c in enumerate(cols)}
        block = SparseIntegerMatrix(len(rows), len(cols), tuple(
            (rpos[r], cpos[c], v) for r, c, v in m.entries if r in rpos and c in cpos))
        assert block == cx.matrix(cell)


def test_unknot_has_no_differential():
    zc = ZcComplex(parse_pd("O 1"))
    for cell in zc.window_cells(JWindow(-1, 9)):
        assert zc.matrix(cell).is_zero()


def test_unknot_window():
    res = zc_homology_table(parse_pd("O 1"), JWindow(-1, 9))
    assert sorted(j for (i, j) in res.table.groups) == [-1, 1, 3, 5, 7, 9]
    assert res.table[(0, -1)] == AbelianGroupPresentation(1)
    for j in (1, 3, 5, 7, 9):
        assert res.table[(0, j)] == AbelianGroupPresentation(2)
    assert res.stabilized_from[0] == 1


def test_kink_extra_entries():
    # the negative kink splits one circle into two; the positive one only merges
    assert len(ZcComplex(parse_pd(KINK_POS)).space.incidences[3]) == 0
    zc = ZcComplex(parse_pd(KINK_NEG))
    extra = zc.space.incidences[3]
    assert len(extra) > 0
    # some column has an entry raising the power of c
    found = False
    for cell in zc.window_cells(JWindow(-3, 7)):
        cols = zc.generators(cell)
        rows = zc.generators((cell[0] + 1, cell[1]))
        for r, c, _ in zc.matrix(cell).entries:
            if rows[r][0] == cols[c][0] + 1:
                found = True
    assert found
    assert zc_check_d_squared(zc, JWindow(-3, 11)) is None


@pytest.mark.parametrize("name", ["hopf", "trefoil-right", "trefoil-left", "figure-eight"])
def test_d_squared_on_window(corpus, name):
    zc = ZcComplex(corpus[name])
    assert zc_check_d_squared(zc, JWindow(-15, 15)) is None


def test_window_monotonicity(corpus):
    d = corpus["trefoil-right"]
    small = zc_homology_table(d, JWindow(1, 9)).table
    big = zc_homology_table(d, JWindow(-5, 15)).table
    for cell, g in small.groups.items():
        assert big[cell] == g


@pytest.mark.parametrize("name,window", [("unknot-0", (-1, 11)), ("hopf", (-6, 12)),
                                         ("trefoil-right", (1, 21))])
def test_stabilisation(corpus, name, window):
    res = zc_homology_table(corpus[name], JWindow(*window))
    for i, j0 in res.stabilized_from.items():
        assert j0 is not None
        assert j0 < window[1]
