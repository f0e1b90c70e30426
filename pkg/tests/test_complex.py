import functools
import json
import random

import numpy as np
import pytest

from khovanov.complex import (ChainComplex, check_d_squared, differential_matrix, dump_complex,
                              incidence)
from khovanov.diagram import parse_pd, permute_crossings, resolve_state
from khovanov.homology import graded_euler_char
from khovanov.bracket import jones_K
from khovanov.states import EnhancedState, state_stats, gradings

from conftest import HOPF, SMALL, TREFOIL


def test_incidence_examples():
    h = parse_pd(HOPF)
    S1 = EnhancedState((1, 1), ((1, 1), (2, -1)))
    assert incidence(h, S1, EnhancedState((1, -1), ((1, 1),))) == 1
    assert incidence(h, S1, EnhancedState((1, -1), ((1, -1),))) == 0
    S1 = EnhancedState((1, 1), ((1, 1), (2, 1)))
    for sign in (1, -1):
        assert incidence(h, S1, EnhancedState((1, -1), ((1, sign),))) == 0
        assert incidence(h, S1, EnhancedState((-1, 1), ((1, sign),))) == 0


def test_incidence_total_on_unrelated_pairs():
    t = parse_pd(TREFOIL)
    states = list(ChainComplex(t).space)
    S1 = states[0]
    # same markers, two crossings apart, wrong direction: all zero
    for S2 in states:
        diff = sum(a != b for a, b in zip(S1.markers, S2.markers))
        if diff != 1:
            assert incidence(t, S1, S2) == 0
            assert incidence(t, S2, S1) == 0


def test_unknot_matrices_empty():
    u = parse_pd("O 1")
    for j in (-1, 1):
        m = differential_matrix(u, 0, j)
        assert m.is_zero() and m.nrows == 0


@pytest.mark.parametrize("name", ["hopf", "trefoil-right", "figure-eight", "kink-negative"])
def test_kernel_matrices_match_brute_force(corpus, name):
    d = corpus[name]
    fast = ChainComplex(d)
    slow = ChainComplex(d, rule=incidence)
    assert fast.cells == slow.cells
    for cell in fast.cells:
        assert fast.matrix(cell) == slow.matrix(cell)
        assert fast.matrix(cell).ncols == fast.rank(cell)
        assert all(v in (1, -1) for _, _, v in fast.matrix(cell).entries)


def test_nonzero_pairs_obey_grading_rules(corpus):
    d = corpus["figure-eight"]
    cx = ChainComplex(d)
    for cell in cx.cells:
        m = cx.matrix(cell)
        cols = cx.states(cell)
        rows = cx.states((cell[0] + 1, cell[1]))
        for r, c, v in m.entries:
            S1, S2 = cols[c], rows[r]
            g1, g2 = gradings(d, S1), gradings(d, S2)
            s1, s2 = state_stats(d, S1), state_stats(d, S2)
            assert g2.j == g1.j and g2.i == g1.i + 1
            assert s2.sigma == s1.sigma - 2 and s2.tau == s1.tau + 1
            assert abs(s2.circle_count - s1.circle_count) == 1


def test_column_bound(corpus):
    for name in SMALL:
        d = corpus[name]
        cx = ChainComplex(d)
        src = cx.space.incidences[0]
        if len(src):
            assert np.bincount(src).max() <= 2 * d.n


@pytest.mark.parametrize("name", SMALL)
def test_d_squared(corpus, name):
    rep = check_d_squared(ChainComplex(corpus[name]))
    assert rep.ok, rep


@pytest.mark.parametrize("name", ["trefoil-right", "figure-eight", "borromean"])
def test_d_squared_any_order(corpus, name):
    d = corpus[name]
    rnd = random.Random(7)
    for _ in range(3):
        order = list(range(1, d.n + 1))
        rnd.shuffle(order)
        assert check_d_squared(ChainComplex(permute_crossings(d, order))).ok


def test_sign_mutation_detected():
    h = parse_pd(HOPF)
    bad = ChainComplex(h, rule=functools.partial(incidence, sign_rule="none"))
    rep = check_d_squared(bad)
    assert not rep.ok and rep.failure is not None


def test_at_or_above_rule_is_identical():
    # the positive marker at k never counts, so including k changes nothing
    h = parse_pd(HOPF)
    a = ChainComplex(h, rule=incidence)
    b = ChainComplex(h, rule=functools.partial(incidence, sign_rule="at_or_above"))
    for cell in a.cells:
        assert a.matrix(cell) == b.matrix(cell)


def test_chain_euler_characteristic(corpus):
    for d in corpus.values():
        assert graded_euler_char(ChainComplex(d)) == jones_K(d)


def test_dump_is_json(corpus):
    data = json.loads(dump_complex(ChainComplex(corpus["hopf"])))
    assert sum(len(c["generators"]) for c in data["cells"]) == 12
