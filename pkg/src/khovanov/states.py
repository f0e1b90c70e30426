"""Kauffman states, enhanced states and their gradings."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .diagram import LinkDiagram, resolve_state, writhe

DEFAULT_MAX_CROSSINGS = 16


class CrossingBoundError(ValueError):
    """The diagram has more crossings than the configured enumeration bound."""


def check_bound(d: LinkDiagram, max_crossings: int | None = None) -> None:
    bound = DEFAULT_MAX_CROSSINGS if max_crossings is None else max_crossings
    if d.n > bound:
        raise CrossingBoundError(
            "diagram has %d crossings, above the bound of %d (raise --max-crossings)"
            % (d.n, bound))


@dataclass(frozen=True)
class EnhancedState:
    """Marker signs per crossing plus a sign per circle of the smoothing.

    ``circle_signs`` holds ``(circle id, sign)`` pairs sorted by id.
    """

    markers: tuple[int, ...]
    circle_signs: tuple[tuple[int, int], ...]

    def sign_of(self, circle_id: int) -> int:
        for cid, s in self.circle_signs:
            if cid == circle_id:
                return s
        raise KeyError(circle_id)

    @property
    def mask(self) -> int:
        return sum(1 << k for k, m in enumerate(self.markers) if m == -1)


@dataclass(frozen=True)
class StateStats:
    sigma: int
    tau: int
    circle_count: int


@dataclass(frozen=True)
class Gradings:
    i: int
    j: int
    I: int  # noqa: E741
    J: int


def markers_of_mask(mask: int, n: int) -> tuple[int, ...]:
    return tuple(-1 if (mask >> k) & 1 else 1 for k in range(n))


def lexicographic_masks(n: int) -> np.ndarray:
    """Masks ordered lexicographically by marker vector, ``+`` before ``-``."""
    masks = np.arange(1 << n, dtype=np.int64)
    key = np.zeros_like(masks)
    for k in range(n):
        key |= ((masks >> k) & 1) << (n - 1 - k)
    return masks[np.argsort(key, kind="stable")]


class StateSpace:
    """All enhanced states of a diagram, indexed compactly.

    Generator ``g`` is the pair ``(mask[g], word[g])``: bit ``k`` of the
    mask is set iff crossing ``k + 1`` has the negative marker, bit
    ``c - 1 - r`` of the word is set iff circle ``r`` (by increasing id)
    is signed ``-``.  Generators are numbered in enumeration order.
    """

    def __init__(self, d: LinkDiagram, max_crossings: int | None = None):
        check_bound(d, max_crossings)
        self.diagram = d
        self.n = d.n
        self.w = writhe(d)
        slots = np.array(d.crossings, dtype=np.int64).reshape(-1, 4)
        self.labels = kernels.circle_labels(slots, d.edge_count)
        n_masks = 1 << d.n
        E = d.edge_count
        is_root = self.labels == np.arange(1, E + 1, dtype=np.int64)[None, :]
        csum = np.cumsum(is_root, axis=1)
        if E:
            self.cidx = np.take_along_axis(csum, self.labels - 1, axis=1) - 1
        else:
            self.cidx = np.zeros((n_masks, 0), dtype=np.int64)
        self.ccount = is_root.sum(axis=1).astype(np.int64) + d.free_loops
        self.order = lexicographic_masks(d.n)
        sizes = np.left_shift(1, self.ccount[self.order])
        offs = np.concatenate([[0], np.cumsum(sizes)[:-1]]).astype(np.int64)
        self.offset = np.empty(n_masks, dtype=np.int64)
        self.offset[self.order] = offs
        self.size = int(sizes.sum())

    def circle_ids(self, mask: int) -> tuple[int, ...]:
        row = self.labels[mask]
        ids = sorted(set(int(v) for v in row))
        return tuple(ids) + tuple(self.diagram.loop_ids())

    @cached_property
    def generators(self) -> tuple[np.ndarray, np.ndarray]:
        """(mask, word) arrays indexed by global generator id."""
        masks = np.repeat(self.order, np.left_shift(1, self.ccount[self.order]))
        word = np.arange(self.size, dtype=np.int64) - self.offset[masks]
        return masks, word

    @cached_property
    def sigma(self) -> np.ndarray:
        masks, _ = self.generators
        return self.n - 2 * _popcount(masks)

    @cached_property
    def tau(self) -> np.ndarray:
        masks, word = self.generators
        return self.ccount[masks] - 2 * _popcount(word)

    @cached_property
    def khovanov_gradings(self) -> tuple[np.ndarray, np.ndarray]:
        """(i, j) per generator; uses the writhe."""
        s, t = self.sigma, self.tau
        i2 = self.w - s
        j2 = 3 * self.w - s - 2 * t
        assert not (i2 % 2).any() and not (j2 % 2).any()
        return i2 // 2, j2 // 2

    @cached_property
    def framed_gradings(self) -> tuple[np.ndarray, np.ndarray]:
        """(I, J) = (sigma, sigma + 2 tau) per generator; orientation-free."""
        return self.sigma, self.sigma + 2 * self.tau

    @cached_property
    def incidences(self):
        slots = np.array(self.diagram.crossings, dtype=np.int64).reshape(-1, 4)
        return kernels.incidence_triplets(
            slots, self.cidx, self.ccount, self.offset, self.diagram.free_loops)

    def index_of(self, mask: int, signs: Sequence[int]) -> int:
        c = len(signs)
        word = 0
        for r, s in enumerate(signs):
            if s == -1:
                word |= 1 << (c - 1 - r)
        return int(self.offset[mask]) + word

    def state(self, g: int) -> EnhancedState:
        masks, words = self.generators
        mask, word = int(masks[g]), int(words[g])
        ids = self.circle_ids(mask)
        c = len(ids)
        signs = tuple((cid, -1 if (word >> (c - 1 - r)) & 1 else 1)
                      for r, cid in enumerate(ids))
        return EnhancedState(markers_of_mask(mask, self.n), signs)

    def __iter__(self) -> Iterator[EnhancedState]:
        for mask in self.order:
            mask = int(mask)
            ids = self.circle_ids(mask)
            markers = markers_of_mask(mask, self.n)
            c = len(ids)
            for word in range(1 << c):
                yield EnhancedState(markers, tuple(
                    (cid, -1 if (word >> (c - 1 - r)) & 1 else 1)
                    for r, cid in enumerate(ids)))


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.int64)
    out = np.zeros_like(a)
    while a.any():
        out += a & 1
        a = a >> 1
    return out


_SPACES: dict = {}


def state_space(d: LinkDiagram, max_crossings: int | None = None) -> StateSpace:
    """Cached :class:`StateSpace` for a diagram."""
    check_bound(d, max_crossings)
    key = (d.crossings, d.free_loops)
    sp = _SPACES.get(key)
    if sp is None:
        if len(_SPACES) > 256:
            _SPACES.clear()
        sp = _SPACES[key] = StateSpace(d, max_crossings=d.n)
    return sp


def enumerate_enhanced_states(d: LinkDiagram, max_crossings: int | None = None
                              ) -> Iterator[EnhancedState]:
    """Stream every enhanced state.

    Marker vectors come in lexicographic order (``+`` before ``-``, crossing
    1 most significant); within one, circle signs are lexicographic by
    circle id.  The smoothing is recomputed per marker vector, so memory
    stays proportional to one state.
    """
    check_bound(d, max_crossings)
    n = d.n
    for mask in lexicographic_masks(n):
        markers = markers_of_mask(int(mask), n)
        ids = resolve_state(d, markers).ids
        c = len(ids)
        for word in range(1 << c):
            yield EnhancedState(markers, tuple(
                (cid, -1 if (word >> (c - 1 - r)) & 1 else 1) for r, cid in enumerate(ids)))


def _check_consistent(d: LinkDiagram, S: EnhancedState):
    if len(S.markers) != d.n:
        raise ValueError("state has %d markers, diagram has %d crossings"
                         % (len(S.markers), d.n))
    ids = resolve_state(d, S.markers).ids
    if tuple(cid for cid, _ in S.circle_signs) != ids:
        raise ValueError("circle signs do not match the circles %s of this smoothing" % (ids,))
    return ids


def state_stats(d: LinkDiagram, S: EnhancedState) -> StateStats:
    ids = _check_consistent(d, S)
    sigma = sum(S.markers)
    tau = sum(s for _, s in S.circle_signs)
    return StateStats(sigma, tau, len(ids))


def gradings(d: LinkDiagram, S: EnhancedState) -> Gradings:
    st = state_stats(d, S)
    w = writhe(d)
    i2 = w - st.sigma
    j2 = 3 * w - st.sigma - 2 * st.tau
    # sigma and w are both congruent to n mod 2
    assert i2 % 2 == 0 and j2 % 2 == 0, "parity violated"
    return Gradings(i2 // 2, j2 // 2, st.sigma, st.sigma + 2 * st.tau)
