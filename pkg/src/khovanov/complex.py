"""Bigraded Khovanov chain complex with sparse integer differentials."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .diagram import LinkDiagram, resolve_state
from .linalg import SparseIntegerMatrix
from .states import EnhancedState, StateSpace, state_space

Cell = tuple[int, int]


SIGN_RULES = ("above", "at_or_above", "none")


def incidence(d: LinkDiagram, S1: EnhancedState, S2: EnhancedState, sign_rule: str = "above") -> int:
    """Incidence number of ``S1 -> S2`` computed straight from the smoothings.

    Nonzero only when the markers differ at one crossing ``k`` (``+`` in
    ``S1``), circles away from ``k`` keep their signs and the touched circles
    follow one of the allowed merge/split patterns.  The value is
    ``(-1)^t`` with ``t`` the number of negative markers of ``S1`` above
    ``k``.

    ``sign_rule`` exists for mutation testing: ``"at_or_above"`` also counts
    crossing ``k`` (always ``+`` in ``S1``, so nothing changes) and
    ``"none"`` drops the sign, which breaks ``d^2 = 0``.
    """
    n = d.n
    if len(S1.markers) != n or len(S2.markers) != n:
        raise ValueError("state does not match a %d-crossing diagram" % n)
    diff = [k for k in range(n) if S1.markers[k] != S2.markers[k]]
    if len(diff) != 1:
        return 0
    k = diff[0]
    if S1.markers[k] != 1:
        return 0
    r1 = resolve_state(d, S1.markers)
    r2 = resolve_state(d, S2.markers)
    for r, S in ((r1, S1), (r2, S2)):
        if tuple(cid for cid, _ in S.circle_signs) != r.ids:
            raise ValueError("circle signs do not match the smoothing")
    local = d.crossings[k]
    t1 = sorted({r1.circle_of_edge(e) for e in local})
    t2 = sorted({r2.circle_of_edge(e) for e in local})
    s1 = dict(S1.circle_signs)
    s2 = dict(S2.circle_signs)
    common1 = {c: s for c, s in s1.items() if c not in t1}
    common2 = {c: s for c, s in s2.items() if c not in t2}
    if common1 != common2:
        return 0
    a = [s1[c] for c in t1]
    b = [s2[c] for c in t2]
    if len(a) == 2 and len(b) == 1:
        ok = (a == [-1, -1] and b == [-1]) or (sorted(a) == [-1, 1] and b == [1])
    elif len(a) == 1 and len(b) == 2:
        ok = (a == [1] and b == [1, 1]) or (a == [-1] and sorted(b) == [-1, 1])
    else:
        ok = False
    if not ok:
        return 0
    if sign_rule not in SIGN_RULES:
        raise ValueError("unknown sign rule %r" % sign_rule)
    if sign_rule == "none":
        return 1
    lo = k + 1 if sign_rule == "above" else k
    t = sum(1 for m in S1.markers[lo:] if m == -1)
    return -1 if t % 2 else 1


class GradedComplex:
    """Generators split into cells ``(h, q)``; the differential maps ``(h, q)``
    to ``(h + step, q)``.

    Parameters
    ----------
    space : StateSpace
        Supplies the generators and, unless ``rule`` is given, the incidence
        triplets from the compiled kernels.
    h, q : ndarray
        Cell coordinates of every generator.
    step : int
        Homological shift of the differential, ``+1`` for ``(i, j)`` and
        ``-2`` for the framed ``(I, J)``.
    rule : callable, optional
        ``rule(d, S1, S2) -> int`` used instead of the kernels; builds each
        matrix by brute force over pairs of generators.
    """

    def __init__(self, space: StateSpace, h: np.ndarray, q: np.ndarray, step: int,
                 rule: Callable | None = None):
        self.space = space
        self.diagram = space.diagram
        self.h = np.asarray(h, dtype=np.int64)
        self.q = np.asarray(q, dtype=np.int64)
        self.step = step
        self.rule = rule
        order = np.lexsort((np.arange(space.size), self.h, self.q))
        self._cells: dict[Cell, np.ndarray] = {}
        if space.size:
            hs, qs = self.h[order], self.q[order]
            brk = np.flatnonzero((np.diff(hs) != 0) | (np.diff(qs) != 0)) + 1
            for chunk in np.split(order, brk):
                self._cells[(int(self.h[chunk[0]]), int(self.q[chunk[0]]))] = chunk
        self.local = np.empty(space.size, dtype=np.int64)
        for ids in self._cells.values():
            self.local[ids] = np.arange(len(ids))
        self._matrices: dict[Cell, SparseIntegerMatrix] = {}
        self._buckets = None

    @property
    def cells(self) -> list[Cell]:
        return sorted(self._cells, key=lambda c: (c[1], c[0]))

    def generators(self, cell: Cell) -> np.ndarray:
        """Global generator ids of a cell, in enumeration order."""
        return self._cells.get(cell, np.zeros(0, dtype=np.int64))

    def rank(self, cell: Cell) -> int:
        return len(self.generators(cell))

    def states(self, cell: Cell) -> list[EnhancedState]:
        return [self.space.state(int(g)) for g in self.generators(cell)]

    def _bucket(self):
        if self._buckets is None:
            src, dst, val = self.space.incidences[:3]
            hs, qs = self.h[src], self.q[src]
            assert (self.h[dst] == hs + self.step).all(), "differential changed h by the wrong amount"
            assert (self.q[dst] == qs).all(), "differential changed q"
            if len(src):
                # a split of a minus circle has two targets, hence 2n
                per_col = np.bincount(src, minlength=self.space.size)
                assert per_col.max() <= 2 * self.space.n, "column with more than 2n entries"
            order = np.lexsort((dst, src, hs, qs))
            src, dst, val = src[order], dst[order], val[order]
            hs, qs = hs[order], qs[order]
            self._buckets = {}
            if len(src):
                brk = np.flatnonzero((np.diff(hs) != 0) | (np.diff(qs) != 0)) + 1
                for s, dd, v in zip(np.split(src, brk), np.split(dst, brk), np.split(val, brk)):
                    self._buckets[(int(self.h[s[0]]), int(self.q[s[0]]))] = (s, dd, v)
        return self._buckets

    def matrix(self, cell: Cell) -> SparseIntegerMatrix:
        """Differential out of ``cell``: columns index ``cell``, rows its target."""
        if cell in self._matrices:
            return self._matrices[cell]
        h, q = cell
        target = (h + self.step, q)
        ncols, nrows = self.rank(cell), self.rank(target)
        if self.rule is not None:
            m = self._brute_matrix(cell, target)
        else:
            got = self._bucket().get(cell)
            if got is None:
                m = SparseIntegerMatrix.zero(nrows, ncols)
            else:
                s, dd, v = got
                m = SparseIntegerMatrix(nrows, ncols, tuple(zip(
                    self.local[dd].tolist(), self.local[s].tolist(), v.tolist())))
        self._matrices[cell] = m
        return m

    def _brute_matrix(self, cell: Cell, target: Cell) -> SparseIntegerMatrix:
        d = self.diagram
        cols = self.states(cell)
        rows = self.states(target)
        entries = []
        for c, S1 in enumerate(cols):
            for r, S2 in enumerate(rows):
                v = self.rule(d, S1, S2)
                if v:
                    entries.append((r, c, v))
        return SparseIntegerMatrix(len(rows), len(cols), tuple(entries))

    def incoming(self, cell: Cell) -> SparseIntegerMatrix:
        h, q = cell
        src = (h - self.step, q)
        if src in self._cells:
            return self.matrix(src)
        return SparseIntegerMatrix.zero(self.rank(cell), 0)

    def euler_terms(self) -> dict[Cell, int]:
        return {c: len(ids) for c, ids in self._cells.items()}


class ChainComplex(GradedComplex):
    """Khovanov complex of a diagram graded by ``(i, j)``; the differential
    has bidegree ``(1, 0)``."""

    def __init__(self, d: LinkDiagram, max_crossings: int | None = None,
                 rule: Callable | None = None):
        sp = state_space(d, max_crossings)
        i, j = sp.khovanov_gradings
        super().__init__(sp, i, j, 1, rule)


def chain_complex(d: LinkDiagram, max_crossings: int | None = None) -> ChainComplex:
    return ChainComplex(d, max_crossings)


def differential_matrix(d: LinkDiagram, i: int, j: int,
                        max_crossings: int | None = None) -> SparseIntegerMatrix:
    """Matrix of the differential from ``C^{i,j}`` (columns) to ``C^{i+1,j}`` (rows)."""
    return ChainComplex(d, max_crossings).matrix((i, j))


@dataclass
class DSquaredReport:
    ok: bool
    products_checked: int
    failure: Cell | None = None
    nonzero_entries: int = 0
    cells: list[Cell] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "products_checked": self.products_checked,
                "failure": list(self.failure) if self.failure else None,
                "nonzero_entries": self.nonzero_entries}


def check_d_squared(cx: GradedComplex | LinkDiagram) -> DSquaredReport:
    """Multiply every pair of consecutive differentials; stop at the first
    nonzero product."""
    if isinstance(cx, LinkDiagram):
        cx = ChainComplex(cx)
    checked = 0
    for cell in cx.cells:
        h, q = cell
        nxt = (h + cx.step, q)
        if nxt not in cx._cells or (h + 2 * cx.step, q) not in cx._cells:
            continue
        prod = cx.matrix(nxt) @ cx.matrix(cell)
        checked += 1
        if not prod.is_zero():
            return DSquaredReport(False, checked, cell, len(prod.entries))
    return DSquaredReport(True, checked)


def _state_json(S: EnhancedState) -> dict:
    return {"markers": "".join("+" if m == 1 else "-" for m in S.markers),
            "circles": [[cid, s] for cid, s in S.circle_signs]}


def dump_complex(cx: GradedComplex, names: Iterable[str] = ("i", "j")) -> str:
    """JSON with every cell's generators and outgoing matrix triplets."""
    hn, qn = names
    out = []
    for cell in cx.cells:
        out.append({hn: cell[0], qn: cell[1],
                    "generators": [_state_json(S) for S in cx.states(cell)],
                    "differential": cx.matrix(cell).to_json()})
    return json.dumps({"cells": out}, sort_keys=True)
