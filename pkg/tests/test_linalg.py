import itertools
import random
from fractions import Fraction
from math import gcd

from hypothesis import given, strategies as st

from khovanov.linalg import (SparseIntegerMatrix, integer_rank, rank_mod_p, rational_kernel,
                             rational_solve, smith_normal_form, apply)


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(len(m)))


def determinantal_divisors(a):
    """Invariant factors as quotients of gcds of k-minors."""
    m, n = len(a), len(a[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, _det([[a[r][c] for c in cols] for r in rows]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


matrices = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.sampled_from([0, 0, 1, -1, 2, -3, 4, 6]), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


def test_snf_examples():
    assert smith_normal_form(SparseIntegerMatrix.from_dense([[2, 0], [0, 3]])) == ([1, 6], 2)
    assert smith_normal_form(SparseIntegerMatrix.zero(3, 2)) == ([], 0)
    assert smith_normal_form(SparseIntegerMatrix.from_dense([[1, 1], [1, 1]])) == ([1], 1)


@given(matrices)
def test_snf_matches_determinantal_divisors(a):
    m = SparseIntegerMatrix.from_dense(a)
    div, rank = smith_normal_form(m)
    assert div == determinantal_divisors(a)
    assert rank == integer_rank(m) == len(div)


@given(matrices, st.randoms(use_true_random=False))
def test_snf_invariant_under_shuffles(a, rnd):
    m = SparseIntegerMatrix.from_dense(a)
    rows = list(range(len(a)))
    cols = list(range(len(a[0])))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    b = [[a[r][c] for c in cols] for r in rows]
    assert smith_normal_form(m) == smith_normal_form(SparseIntegerMatrix.from_dense(b))


def test_large_entries_fall_back_to_big_ints():
    big = 1 << 70
    m = SparseIntegerMatrix.from_dense([[big, 0], [0, big * 3]])
    assert smith_normal_form(m) == ([big, 3 * big], 2)


def test_rank_mod_p():
    m = SparseIntegerMatrix.from_dense([[2, 0], [0, 3]])
    assert rank_mod_p(m, 2) == 1
    assert rank_mod_p(m, 3) == 1
    assert rank_mod_p(m, 5) == 2


@given(matrices)
def test_kernel_and_solve(a):
    m = SparseIntegerMatrix.from_dense(a)
    ker = rational_kernel(m)
    assert len(ker) == m.ncols - integer_rank(m)
    for v in ker:
        assert apply(m, v) == {}
    x = {c: Fraction(random.Random(c).randint(-3, 3)) for c in range(m.ncols)}
    b = apply(m, x)
    sol = rational_solve(m, b)
    assert sol is not None and apply(m, sol) == b


def test_solve_inconsistent():
    m = SparseIntegerMatrix.from_dense([[1, 1], [1, 1]])
    assert rational_solve(m, {0: Fraction(1)}) is None


def test_matrix_algebra():
    a = SparseIntegerMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseIntegerMatrix.from_dense([[1, -2], [0, 1]])
    assert (a @ b).to_dense() == [[1, 0], [0, 1]]
    assert (a - a).is_zero()
    assert a.transpose().to_dense() == [[1, 0], [2, 1]]
