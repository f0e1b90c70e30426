import pytest
from hypothesis import given, strategies as st

from khovanov.polynomial import LaurentPolynomial

A = LaurentPolynomial.monomial("A")
terms = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=5)
polys = terms.map(lambda t: LaurentPolynomial("A", t))


def test_text_form():
    assert str(-A ** 2 - A ** -2) == "-A^-2 - A^2"
    q = LaurentPolynomial.monomial("q")
    assert str(q ** -1 + q) == "q^-1 + q"
    assert str(2 * q ** 2 - 3) == "-3 + 2*q^2"
    assert str(LaurentPolynomial("q")) == "0"


def test_no_zero_coefficients():
    p = A + (-A)
    assert p.is_zero() and p.terms == {}


def test_json_round_trip():
    p = A ** 5 + A - 3 * A ** -2
    assert LaurentPolynomial.from_json("A", p.to_json()) == p
    assert p.to_json() == [[-2, -3], [1, 1], [5, 1]]


def test_a_to_q():
    # q = -A^-2
    assert (-A ** -2).a_to_q() == LaurentPolynomial.monomial("q")
    with pytest.raises(ValueError):
        A.a_to_q()


def test_inverse_only_for_unit_monomials():
    with pytest.raises(ValueError):
        (A + 1) ** -1
    with pytest.raises(ValueError):
        (2 * A) ** -1


def test_variable_mismatch():
    with pytest.raises(ValueError):
        A + LaurentPolynomial.monomial("q")


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0


@given(polys, st.integers(0, 4))
def test_power_matches_repeated_product(p, k):
    out = LaurentPolynomial.constant("A", 1)
    for _ in range(k):
        out = out * p
    assert p ** k == out
