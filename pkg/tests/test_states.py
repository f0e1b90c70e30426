import pytest
from hypothesis import given, strategies as st

from khovanov.corpus import braid_closure
from khovanov.diagram import parse_pd, resolve_state, writhe
from khovanov.states import (CrossingBoundError, EnhancedState, StateSpace,
                             enumerate_enhanced_states, gradings, state_stats)

from conftest import HOPF, TREFOIL


def test_counts():
    assert len(list(enumerate_enhanced_states(parse_pd("O 1")))) == 2
    assert len(list(enumerate_enhanced_states(parse_pd(HOPF)))) == 12
    # circle counts 2,1,1,1,2,2,2,3 over the eight marker vectors
    assert len(list(enumerate_enhanced_states(parse_pd(TREFOIL)))) == 30


def test_order_is_lexicographic():
    states = list(enumerate_enhanced_states(parse_pd(HOPF)))
    markers = [s.markers for s in states]
    assert markers[0] == (1, 1)
    assert markers[-1] == (-1, -1)
    keys = [tuple(0 if m == 1 else 1 for m in s.markers) + tuple(0 if x == 1 else 1 for _, x in s.circle_signs)
            for s in states]
    assert keys == sorted(keys)


def test_stream_matches_state_space(corpus):
    for d in corpus.values():
        sp = StateSpace(d)
        assert list(enumerate_enhanced_states(d)) == list(sp)
        assert [sp.state(g) for g in range(sp.size)] == list(sp)


def test_stats_examples():
    h = parse_pd(HOPF)
    S = EnhancedState((1, -1), ((1, -1),))
    st_ = state_stats(h, S)
    assert (st_.sigma, st_.tau, st_.circle_count) == (0, -1, 1)
    t = parse_pd(TREFOIL)
    S = EnhancedState((1, 1, 1), tuple((c, 1) for c in resolve_state(t, (1, 1, 1)).ids))
    assert state_stats(t, S).sigma == 3


def test_gradings_examples():
    u = parse_pd("O 1")
    g = gradings(u, EnhancedState((), ((1, 1),)))
    assert (g.i, g.j, g.I, g.J) == (0, -1, 0, 2)
    g = gradings(u, EnhancedState((), ((1, -1),)))
    assert (g.i, g.j, g.I, g.J) == (0, 1, 0, -2)
    t = parse_pd(TREFOIL)
    ids = resolve_state(t, (1, 1, 1)).ids
    g = gradings(t, EnhancedState((1, 1, 1), tuple((c, 1) for c in ids)))
    assert (g.i, g.j, g.I, g.J) == (0, 1, 3, 7)


def test_inconsistent_state_rejected():
    t = parse_pd(TREFOIL)
    with pytest.raises(ValueError):
        state_stats(t, EnhancedState((1, 1, 1), ((1, 1),)))
    with pytest.raises(ValueError):
        state_stats(t, EnhancedState((1, 1), ((1, 1),)))


def test_crossing_bound():
    d = braid_closure([1, 2] * 4, 3)
    with pytest.raises(CrossingBoundError):
        list(enumerate_enhanced_states(d, max_crossings=7))
    with pytest.raises(CrossingBoundError):
        StateSpace(d, max_crossings=4)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=6))
def test_grading_identities(word):
    d = braid_closure(word, 3)
    w = writhe(d)
    n = d.n
    for S in enumerate_enhanced_states(d):
        s = state_stats(d, S)
        g = gradings(d, S)
        assert abs(s.sigma) <= n and (s.sigma - n) % 2 == 0
        assert abs(s.tau) <= s.circle_count and (s.tau - s.circle_count) % 2 == 0
        assert g.J == 3 * w - 2 * g.j
        assert g.I == w - 2 * g.i
        assert g.J == g.I + 2 * s.tau


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=6))
def test_vectorised_gradings_match(word):
    d = braid_closure(word, 3)
    sp = StateSpace(d)
    i, j = sp.khovanov_gradings
    for g, S in enumerate(sp):
        gr = gradings(d, S)
        assert (gr.i, gr.j) == (i[g], j[g])
