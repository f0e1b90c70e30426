"""The compiled kernels and their numpy fallbacks must agree exactly."""
import numpy as np
import pytest
from hypothesis import given, strategies as st

from khovanov import kernels
from khovanov.corpus import braid_closure
from khovanov.diagram import resolve_state
from khovanov.states import StateSpace, markers_of_mask


def _slots(d):
    return np.array(d.crossings, dtype=np.int64).reshape(-1, 4)


def _sorted(trip):
    src, dst, val = trip
    return sorted(zip(src.tolist(), dst.tolist(), val.tolist()))


def test_labels_match_reference(corpus):
    for d in corpus.values():
        sp = StateSpace(d)
        for m in range(1 << d.n):
            assert sp.circle_ids(m) == resolve_state(d, markers_of_mask(m, d.n)).ids


@pytest.mark.parametrize("word", [(1, 2, 1, 2), (1, -2, 1, -2, 1, -2), (1, 1, 1, -2, 1, -2)])
def test_numba_and_numpy_paths_agree(word):
    d = braid_closure(word, 3)
    slots = _slots(d)
    a = kernels._circle_labels_numba(slots, d.edge_count, kernels._PAIRS)
    b = kernels._circle_labels_numpy(slots, d.edge_count, kernels._PAIRS)
    assert np.array_equal(a, b)
    sp = StateSpace(d)
    args = (slots, sp.cidx, sp.ccount, sp.offset, d.free_loops)
    x = kernels._incidence_numba(*args)
    y = kernels._incidence_numpy(*args)
    assert _sorted(x[:3]) == _sorted(y[:3])
    assert _sorted(x[3:]) == _sorted(y[3:])


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=7))
def test_paths_agree_on_random_braids(word):
    d = braid_closure(word, 3)
    slots = _slots(d)
    a = kernels._circle_labels_numba(slots, d.edge_count, kernels._PAIRS)
    b = kernels._circle_labels_numpy(slots, d.edge_count, kernels._PAIRS)
    assert np.array_equal(a, b)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_small_diagonalisation(rows):
    from khovanov.linalg import _diagonalize_python, normalize_divisors
    a = np.array(rows, dtype=np.int64)
    fast = kernels.diagonalize_small(a)
    slow = _diagonalize_python([list(map(int, r)) for r in rows])
    if fast is not None:
        assert normalize_divisors(fast) == normalize_divisors(slow)
