import pytest

from khovanov.bracket import (A, DELTA, Q, bracket_skein_oracle, enhanced_monomial,
                              enhanced_monomial_a, jones_K, kauffman_bracket)
from khovanov.diagram import apply_r_move, parse_pd, r3_sites, resolve_state
from khovanov.polynomial import LaurentPolynomial
from khovanov.states import EnhancedState, enumerate_enhanced_states

from conftest import HOPF, KINK_POS, TREFOIL, r2_sites


def test_bracket_examples():
    assert kauffman_bracket(parse_pd("O 1")) == -A ** 2 - A ** -2
    assert kauffman_bracket(parse_pd(KINK_POS)) == A ** 5 + A
    assert kauffman_bracket(parse_pd(KINK_POS)) == -A ** 3 * DELTA
    assert kauffman_bracket(parse_pd("O 2")) == A ** 4 + 2 + A ** -4


def test_crossingless_is_power_of_delta():
    for k in range(1, 5):
        assert kauffman_bracket(parse_pd("O %d" % k)) == DELTA ** k


def test_jones_examples():
    assert jones_K(parse_pd("O 1")) == Q + Q ** -1
    assert jones_K(parse_pd(KINK_POS)) == Q + Q ** -1
    assert jones_K(parse_pd("O 2")) == Q ** 2 + 2 + Q ** -2


def test_oracle_examples():
    assert bracket_skein_oracle(parse_pd("O 1")) == -A ** 2 - A ** -2
    assert bracket_skein_oracle(parse_pd(KINK_POS)) == A ** 5 + A
    h = parse_pd(HOPF)
    assert bracket_skein_oracle(h) == kauffman_bracket(h)


def test_oracle_on_corpus(corpus):
    for d in corpus.values():
        assert bracket_skein_oracle(d) == kauffman_bracket(d)


def test_enhanced_monomial_examples():
    u = parse_pd("O 1")
    assert enhanced_monomial(u, EnhancedState((), ((1, 1),))) == (1, -1)
    assert enhanced_monomial(u, EnhancedState((), ((1, -1),))) == (1, 1)
    t = parse_pd(TREFOIL)
    ids = resolve_state(t, (1, 1, 1)).ids
    assert enhanced_monomial(t, EnhancedState((1, 1, 1), tuple((c, 1) for c in ids))) == (1, 1)


def test_state_sum_of_monomials_is_jones(corpus):
    for d in corpus.values():
        total = LaurentPolynomial("q")
        total_a = LaurentPolynomial("A")
        for S in enumerate_enhanced_states(d):
            s, j = enhanced_monomial(d, S)
            total = total + LaurentPolynomial.monomial("q", j, s)
            total_a = total_a + enhanced_monomial_a(d, S)
        assert total == jones_K(d)
        assert total_a.a_to_q() == total


@pytest.mark.parametrize("name", ["unknot-0", "hopf", "trefoil-right", "figure-eight"])
def test_r1_covariance(corpus, name):
    d = corpus[name]
    b = kauffman_bracket(d)
    site = 1
    for move, factor in (("R1+", -A ** 3), ("R1-", -A ** -3)):
        e = apply_r_move(d, move, site)
        assert kauffman_bracket(e) == factor * b
        assert jones_K(e) == jones_K(d)


@pytest.mark.parametrize("name", ["unlink-2", "hopf", "trefoil-right", "figure-eight"])
def test_r2_invariance(corpus, name):
    d = corpus[name]
    for site in r2_sites(d):
        e = apply_r_move(d, "R2", site)
        assert kauffman_bracket(e) == kauffman_bracket(d)
        assert jones_K(e) == jones_K(d)


def test_r3_invariance(corpus):
    d = corpus["torus-3-4"]
    for site in r3_sites(d)[:4]:
        e = apply_r_move(d, "R3", site)
        assert kauffman_bracket(e) == kauffman_bracket(d)
        assert jones_K(e) == jones_K(d)


def test_known_trefoil_jones():
    # right-handed trefoil, computed by hand from the three-crossing state sum
    assert jones_K(parse_pd(TREFOIL)) == Q + Q ** 3 + Q ** 5 - Q ** 9
