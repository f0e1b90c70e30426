"""Integral homology of graded complexes, and field-coefficient oracles."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .complex import Cell, ChainComplex, GradedComplex
from .diagram import LinkDiagram
from .linalg import (SparseIntegerMatrix, hstack, integer_rank, rank_mod_p_rows, rational_kernel,
                     smith_normal_form, vectors_to_matrix)
from .polynomial import LaurentPolynomial


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """``Z^free_rank`` plus cyclic torsion ``Z/t1 + Z/t2 + ...`` with ``t1 | t2 | ...``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative rank")
        t = tuple(int(x) for x in self.torsion)
        if any(x <= 1 for x in t):
            raise ValueError("torsion coefficients must exceed 1")
        if any(t[k + 1] % t[k] for k in range(len(t) - 1)):
            raise ValueError("torsion coefficients must form a divisibility chain")
        object.__setattr__(self, "torsion", t)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else "Z^%d" % self.free_rank)
        parts.extend("Z/%d" % t for t in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass
class HomologyTable:
    """Nontrivial groups keyed by cell; ``names`` label the two gradings."""

    groups: dict[Cell, AbelianGroupPresentation] = field(default_factory=dict)
    names: tuple[str, str] = ("i", "j")

    def __getitem__(self, cell: Cell) -> AbelianGroupPresentation:
        return self.groups.get(cell, AbelianGroupPresentation())

    def cells(self) -> list[Cell]:
        return sorted(self.groups, key=lambda c: (c[1], c[0]))

    def total_free_rank(self) -> int:
        return sum(g.free_rank for g in self.groups.values())

    def torsion_summands(self) -> list[tuple[Cell, int]]:
        return [(c, t) for c in self.cells() for t in self.groups[c].torsion]

    def __eq__(self, other):
        return isinstance(other, HomologyTable) and self.groups == other.groups

    def to_json_obj(self) -> dict:
        h, q = self.names
        return {"groups": [{h: c[0], q: c[1], "free_rank": self.groups[c].free_rank,
                            "torsion": list(self.groups[c].torsion)} for c in self.cells()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str, names=("i", "j")) -> "HomologyTable":
        h, q = names
        data = json.loads(text)
        return cls({(g[h], g[q]): AbelianGroupPresentation(g["free_rank"], tuple(g["torsion"]))
                    for g in data["groups"]}, names)

    def render(self) -> str:
        """Grid with one row per ``q`` (largest first) and one column per ``h``."""
        h, q = self.names
        if not self.groups:
            return "(all groups trivial)"
        hs = sorted({c[0] for c in self.groups})
        qs = sorted({c[1] for c in self.groups}, reverse=True)
        cells = [["%s\\%s" % (q, h)] + [str(x) for x in hs]]
        for y in qs:
            row = [str(y)]
            for x in hs:
                g = self.groups.get((x, y))
                row.append(str(g) if g else ".")
            cells.append(row)
        widths = [max(len(r[k]) for r in cells) for k in range(len(cells[0]))]
        return "\n".join("  ".join(s.rjust(w) for s, w in zip(r, widths)).rstrip() for r in cells)


class _SNFCache:
    def __init__(self):
        self._store: dict[int, tuple[list[int], int]] = {}

    def __call__(self, m: SparseIntegerMatrix):
        key = id(m)
        got = self._store.get(key)
        if got is None:
            got = self._store[key] = (smith_normal_form(m), m)
        return got[0]


def cell_homology(cx: GradedComplex, cell: Cell, snf=smith_normal_form) -> AbelianGroupPresentation:
    """``ker(out) / im(in)`` from the Smith forms of the two adjacent maps.

    The cycles form a direct summand of the chain group, so the torsion of
    the quotient is read off the incoming divisors alone.
    """
    n = cx.rank(cell)
    _, r_out = snf(cx.matrix(cell))
    div_in, r_in = snf(cx.incoming(cell))
    free = n - r_out - r_in
    assert free >= 0, "negative Betti number at %s" % (cell,)
    return AbelianGroupPresentation(free, tuple(x for x in div_in if x > 1))


def complex_homology(cx: GradedComplex, names=("i", "j")) -> HomologyTable:
    snf = _SNFCache()
    groups = {}
    for cell in cx.cells:
        g = cell_homology(cx, cell, snf)
        if not g.is_trivial():
            groups[cell] = g
    return HomologyTable(groups, names)


def homology_table(d: LinkDiagram, max_crossings: int | None = None) -> HomologyTable:
    """Khovanov homology ``H^{i,j}`` of a diagram over the integers."""
    return complex_homology(ChainComplex(d, max_crossings))


def graded_euler_char(t: HomologyTable | GradedComplex | Mapping[Cell, int]) -> LaurentPolynomial:
    """``sum over cells of (-1)^h q^q rank``; works on chain groups or homology."""
    if isinstance(t, HomologyTable):
        ranks = {c: g.free_rank for c, g in t.groups.items()}
    elif isinstance(t, GradedComplex):
        ranks = t.euler_terms()
    else:
        ranks = dict(t)
    out: dict[int, int] = {}
    for (h, q), r in ranks.items():
        out[q] = out.get(q, 0) + (-r if h % 2 else r)
    return LaurentPolynomial("q", out)


# ---------------------------------------------------------------- oracle

def field_betti(cx: GradedComplex, p: int | None) -> dict[Cell, int]:
    """Dimension of homology over ``Q`` (``p=None``) or ``F_p`` per cell,
    by row reduction, sharing nothing with the Smith form path."""
    ranks: dict[Cell, int] = {}

    def rk(cell):
        if cell not in ranks:
            ranks[cell] = rank_mod_p_rows(cx.matrix(cell).rows(), p) if cell in cx._cells else 0
        return ranks[cell]

    out = {}
    for cell in cx.cells:
        h, q = cell
        out[cell] = cx.rank(cell) - rk(cell) - rk((h - cx.step, q))
    return out


@dataclass
class OracleReport:
    ok: bool
    mismatches: list[str]


def check_against_field_oracle(cx: GradedComplex, table: HomologyTable,
                               primes=(2, 3)) -> OracleReport:
    """Compare an integral table with homology over Q and F_p.

    Universal coefficients for a cochain complex of free groups give
    ``dim H^h(F_p) = free(h) + t_p(h) + t_p(h + step)`` where ``t_p`` counts
    torsion summands of order divisible by ``p``.
    """
    bad = []
    q0 = field_betti(cx, None)
    for cell in cx.cells:
        if table[cell].free_rank != q0[cell]:
            bad.append("rank over Q at %s: %d vs %d" % (cell, table[cell].free_rank, q0[cell]))
    for p in primes:
        fp = field_betti(cx, p)
        for cell in cx.cells:
            h, q = cell

            def tp(c):
                return sum(1 for t in table[c].torsion if t % p == 0)

            expect = table[cell].free_rank + tp(cell) + tp((h + cx.step, q))
            if fp[cell] != expect:
                bad.append("dim over F_%d at %s: %d vs %d" % (p, cell, fp[cell], expect))
    return OracleReport(not bad, bad)


# ---------------------------------------------------------------- over Q

def _qrank(m: SparseIntegerMatrix) -> int:
    return integer_rank(m)


class RationalHomology:
    """Cycle bases, boundary spans and Betti numbers over Q, cached per cell."""

    def __init__(self, cx: GradedComplex):
        self.cx = cx
        self._z: dict[Cell, list] = {}
        self._b: dict[Cell, SparseIntegerMatrix] = {}
        self._brank: dict[Cell, int] = {}

    def cycles(self, cell: Cell):
        if cell not in self._z:
            self._z[cell] = rational_kernel(self.cx.matrix(cell)) if self.cx.rank(cell) else []
        return self._z[cell]

    def boundaries(self, cell: Cell) -> SparseIntegerMatrix:
        if cell not in self._b:
            self._b[cell] = self.cx.incoming(cell)
        return self._b[cell]

    def boundary_rank(self, cell: Cell) -> int:
        if cell not in self._brank:
            self._brank[cell] = _qrank(self.boundaries(cell))
        return self._brank[cell]

    def betti(self, cell: Cell) -> int:
        return len(self.cycles(cell)) - self.boundary_rank(cell)


def induced_rank(images: list[dict[int, Fraction]], target: RationalHomology, cell: Cell) -> int:
    """Rank of the span of ``images`` in ``H(cell)`` over Q."""
    B = target.boundaries(cell)
    stacked = hstack([B, vectors_to_matrix(images, target.cx.rank(cell))])
    return integer_rank(stacked) - target.boundary_rank(cell)
