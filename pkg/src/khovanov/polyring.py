"""Khovanov complex over Z[c], truncated to a window of q-degrees.

Cell ``(i, j)`` is spanned by products ``c^k S`` with ``i(S) = i`` and
``j(S) = j - 2k``.  The differential keeps every ordinary incidence at
equal powers of ``c`` and adds ``c^k S1 -> c^(k+1) S2`` whenever a minus
circle of ``S1`` splits into two plus circles of ``S2``, with the usual
``(-1)^t`` sign.  Every cell is finite and the differential preserves
``j``, so a window only decides which cells are computed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .complex import Cell
from .diagram import LinkDiagram
from .homology import (AbelianGroupPresentation, HomologyTable, RationalHomology,
                       induced_rank, smith_normal_form)
from .linalg import SparseIntegerMatrix, apply
from .states import EnhancedState, state_space


@dataclass(frozen=True)
class JWindow:
    j_min: int
    j_max: int

    def __post_init__(self):
        if self.j_min > self.j_max:
            raise ValueError("empty window: j_min %d > j_max %d" % (self.j_min, self.j_max))

    def __contains__(self, j: int) -> bool:
        return self.j_min <= j <= self.j_max


@dataclass(frozen=True)
class CGenerator:
    power: int
    state: EnhancedState


def _csr(src, dst, val, size):
    order = np.argsort(src, kind="stable")
    src, dst, val = src[order], dst[order], val[order]
    start = np.searchsorted(src, np.arange(size + 1))
    return start, dst, val


class ZcComplex:
    """Cells, matrices and the multiplication-by-c map of the Z[c] complex."""

    def __init__(self, d: LinkDiagram, max_crossings: int | None = None):
        sp = state_space(d, max_crossings)
        self.space = sp
        self.i, self.j = sp.khovanov_gradings
        src, dst, val, csrc, cdst, cval = sp.incidences
        self._plain = _csr(src, dst, val, sp.size)
        self._extra = _csr(csrc, cdst, cval, sp.size)
        self._by_i: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        for i in np.unique(self.i):
            ids = np.flatnonzero(self.i == i)
            ids = ids[np.argsort(self.j[ids], kind="stable")]
            self._by_i[int(i)] = (ids, self.j[ids])
        self.step = 1
        self._gens: dict[Cell, list[tuple[int, int]]] = {}
        self._mats: dict[Cell, SparseIntegerMatrix] = {}

    @property
    def i_values(self) -> list[int]:
        return sorted(self._by_i)

    def parity(self) -> int:
        return int(self.j[0]) % 2 if len(self.j) else 0

    def generators(self, cell: Cell) -> list[tuple[int, int]]:
        """``(k, g)`` pairs spanning the cell, by power then generator id."""
        if cell not in self._gens:
            i, j = cell
            out = []
            if i in self._by_i:
                ids, js = self._by_i[i]
                for g, jg in zip(ids.tolist(), js.tolist()):
                    if jg <= j and (j - jg) % 2 == 0:
                        out.append(((j - jg) // 2, g))
            out.sort()
            self._gens[cell] = out
        return self._gens[cell]

    def cgenerators(self, cell: Cell) -> list[CGenerator]:
        return [CGenerator(k, self.space.state(g)) for k, g in self.generators(cell)]

    def rank(self, cell: Cell) -> int:
        return len(self.generators(cell))

    def matrix(self, cell: Cell) -> SparseIntegerMatrix:
        """Differential from ``cell`` (columns) to ``(i + 1, j)`` (rows)."""
        if cell in self._mats:
            return self._mats[cell]
        i, j = cell
        cols = self.generators(cell)
        rows = self.generators((i + 1, j))
        where = {kg: r for r, kg in enumerate(rows)}
        entries = []
        for c, (k, g) in enumerate(cols):
            for (start, dst, val), dk in ((self._plain, 0), (self._extra, 1)):
                for t in range(start[g], start[g + 1]):
                    r = where.get((k + dk, int(dst[t])))
                    assert r is not None, "c-differential left its cell"
                    entries.append((r, c, int(val[t])))
        m = SparseIntegerMatrix(len(rows), len(cols), tuple(entries))
        self._mats[cell] = m
        return m

    def incoming(self, cell: Cell) -> SparseIntegerMatrix:
        i, j = cell
        return self.matrix((i - 1, j))

    def times_c(self, cell: Cell) -> SparseIntegerMatrix:
        """Multiplication by ``c`` from ``(i, j)`` to ``(i, j + 2)``."""
        i, j = cell
        tgt = {kg: r for r, kg in enumerate(self.generators((i, j + 2)))}
        cols = self.generators(cell)
        return SparseIntegerMatrix(len(tgt), len(cols),
                                   tuple((tgt[(k + 1, g)], c, 1) for c, (k, g) in enumerate(cols)))

    def window_cells(self, w: JWindow) -> list[Cell]:
        p = self.parity()
        js = [j for j in range(w.j_min, w.j_max + 1) if j % 2 == p]
        return [(i, j) for j in js for i in self.i_values if self.rank((i, j))]


def zc_differential_matrix(d: LinkDiagram, i: int, j: int, w: JWindow,
                           max_crossings: int | None = None) -> SparseIntegerMatrix:
    if j not in w:
        raise ValueError("cell (%d, %d) lies outside the window [%d, %d]" % (i, j, w.j_min, w.j_max))
    return ZcComplex(d, max_crossings).matrix((i, j))


@dataclass
class ZcHomology:
    table: HomologyTable
    window: JWindow
    stabilized_from: dict[int, int | None] = field(default_factory=dict)
    c_ranks: dict[Cell, int] = field(default_factory=dict)

    def to_json(self) -> str:
        obj = self.table.to_json_obj()
        obj["window"] = {"j_min": self.window.j_min, "j_max": self.window.j_max}
        obj["stabilized_from"] = {str(i): v for i, v in sorted(self.stabilized_from.items())}
        return json.dumps(obj, sort_keys=True)

    def render(self) -> str:
        lines = [self.table.render(), ""]
        for i, v in sorted(self.stabilized_from.items()):
            lines.append("i=%d: stable from j=%s" % (i, "-" if v is None else v))
        return "\n".join(lines)


def zc_homology_table(d: LinkDiagram, w: JWindow, max_crossings: int | None = None) -> ZcHomology:
    """Integral homology of every in-window cell plus stabilisation data.

    For each ``i`` the threshold is the least in-window ``j`` from which
    every further step ``j -> j + 2`` inside the window has isomorphic
    groups and a multiplication-by-c map of full rank over Q; ``None``
    when no such step exists.
    """
    zc = ZcComplex(d, max_crossings)
    groups = {}
    for cell in zc.window_cells(w):
        n = zc.rank(cell)
        _, r_out = smith_normal_form(zc.matrix(cell))
        div_in, r_in = smith_normal_form(zc.incoming(cell))
        g = AbelianGroupPresentation(n - r_out - r_in, tuple(x for x in div_in if x > 1))
        if not g.is_trivial():
            groups[cell] = g
    table = HomologyTable(groups)
    H = RationalHomology(zc)
    c_ranks: dict[Cell, int] = {}
    stable: dict[int, int | None] = {}
    p = zc.parity()
    js = [j for j in range(w.j_min, w.j_max + 1) if j % 2 == p]
    for i in zc.i_values:
        good = []
        for j in js[:-1]:
            a, b = (i, j), (i, j + 2)
            if table[a] != table[b]:
                good.append(False)
                continue
            imgs = [apply(zc.times_c(a), z) for z in H.cycles(a)] if zc.rank(a) else []
            r = induced_rank(imgs, H, b) if zc.rank(b) else 0
            c_ranks[a] = r
            good.append(r == H.betti(a) == H.betti(b))
        start = None
        for k in range(len(good) - 1, -1, -1):
            if not good[k]:
                break
            start = js[k]
        stable[i] = start
    return ZcHomology(table, w, stable, c_ranks)


def zc_check_d_squared(zc: ZcComplex, w: JWindow) -> Cell | None:
    """First window cell with a nonzero product of consecutive differentials."""
    for cell in zc.window_cells(w):
        i, j = cell
        if not (zc.matrix((i + 1, j)) @ zc.matrix(cell)).is_zero():
            return cell
    return None
