import pytest

from khovanov.complex import ChainComplex
from khovanov.diagram import apply_r_move, parse_pd, r3_sites, writhe
from khovanov.framed import (FramedComplex, anticommutes, commutation_defect, framed_homology,
                             long_exact_sequence_check, regrade_to_framed, skein_chain_maps,
                             smooth_at, verify_skein_ses)
from khovanov.homology import homology_table

from conftest import HOPF, KINK_NEG, KINK_POS, SMALL, TREFOIL, r2_sites


def test_unknot_framed_cells():
    cx = FramedComplex(parse_pd("O 1"))
    assert cx.cells == [(0, -2), (0, 2)]
    assert cx.states((0, 2))[0].circle_signs == ((1, 1),)
    assert cx.states((0, -2))[0].circle_signs == ((1, -1),)


def test_trefoil_regrading_of_cells():
    d = parse_pd(TREFOIL)
    w = writhe(d)
    fr, cx = FramedComplex(d), ChainComplex(d)
    for I, J in fr.cells:
        cell = ((w - I) // 2, (3 * w - J) // 2)
        assert list(fr.generators((I, J))) == list(cx.generators(cell))


@pytest.mark.parametrize("name", SMALL)
def test_regraded_homology(corpus, name):
    d = corpus[name]
    assert framed_homology(d) == regrade_to_framed(homology_table(d), writhe(d))


def test_framed_differential_degree(corpus):
    cx = FramedComplex(corpus["figure-eight"])
    src, dst, _ = cx.space.incidences[:3]
    assert ((cx.h[dst] - cx.h[src]) == -2).all()
    assert (cx.q[dst] == cx.q[src]).all()


def test_smooth_at_examples():
    t = smooth_at(parse_pd(HOPF), 2)
    assert t.D_plus.n == 1 and t.D_minus.n == 1
    kinks = {KINK_POS, KINK_NEG}
    assert {t.D_plus.to_pd(), t.D_minus.to_pd()} <= kinks
    t = smooth_at(parse_pd(KINK_POS), 1)
    assert {t.D_plus.to_pd(), t.D_minus.to_pd()} == {"O 1", "O 2"}
    t = smooth_at(parse_pd(TREFOIL), 3)
    assert t.D_plus.n == 2 and t.D_minus.n == 2


def test_smooth_at_keeps_order():
    d = parse_pd(TREFOIL)
    t = smooth_at(d, 1)
    assert t.D.crossings[-1] == d.crossings[0]
    assert t.D.crossings[:2] == d.crossings[1:]


def test_smooth_at_range():
    with pytest.raises(ValueError):
        smooth_at(parse_pd(HOPF), 3)


def test_alpha_injective_on_generators(corpus):
    m = skein_chain_maps(smooth_at(corpus["figure-eight"], 2))
    assert len(set(m.alpha.tolist())) == len(m.alpha)


def test_commutation_hopf(corpus):
    for c in (1, 2):
        m = skein_chain_maps(smooth_at(corpus["hopf"], c))
        assert commutation_defect(m) == []


def test_plain_inclusion_anticommutes(corpus):
    # without the sign twist alpha anticommutes with the differentials
    for name in ("hopf", "trefoil-right", "figure-eight"):
        d = corpus[name]
        for c in range(1, d.n + 1):
            raw = skein_chain_maps(smooth_at(d, c), twist=False)
            assert anticommutes(raw)


@pytest.mark.parametrize("name", SMALL)
def test_short_and_long_sequences(corpus, name):
    d = corpus[name]
    for c in range(1, d.n + 1):
        m = skein_chain_maps(smooth_at(d, c))
        s = verify_skein_ses(m)
        assert s.ok, [v for v in s.cells if not v.ok]
        assert all(v.checks["beta_alpha_zero"] for v in s.cells)
        assert long_exact_sequence_check(m).ok


def test_mutated_beta_detected(corpus):
    m = skein_chain_maps(smooth_at(corpus["hopf"], 2), mutate_beta=True)
    assert not verify_skein_ses(m).ok


def test_connecting_map_degree(corpus):
    # D+ at (I, J) feeds D- at (I, J + 2)
    m = skein_chain_maps(smooth_at(corpus["trefoil-right"], 3))
    rep = long_exact_sequence_check(m)
    names = {(n.complex, n.cell) for n in rep.nodes}
    for n in rep.nodes:
        if n.complex == "D+" and n.rank_out:
            I, J = n.cell
            assert ("D-", (I, J + 2)) in names


@pytest.mark.parametrize("name", ["hopf", "trefoil-right"])
def test_framed_r2_invariance(corpus, name):
    d = corpus[name]
    base = framed_homology(d)
    for site in r2_sites(d):
        assert framed_homology(apply_r_move(d, "R2", site)) == base


def test_framed_r3_invariance(corpus):
    d = corpus["torus-3-4"]
    base = framed_homology(d)
    for site in r3_sites(d)[:3]:
        assert framed_homology(apply_r_move(d, "R3", site)) == base


def test_framed_not_r1_invariant(corpus):
    d = corpus["unknot-0"]
    assert framed_homology(apply_r_move(d, "R1+", 1)) != framed_homology(d)
