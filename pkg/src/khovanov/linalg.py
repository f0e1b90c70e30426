"""Exact sparse integer linear algebra: Smith normal form, ranks, kernels.

Matrices are small to medium and extremely sparse (Khovanov differentials
have entries in {-1, 0, 1}), so rows are kept as ``{column: value}`` dicts
and unit pivots are eliminated first.  Whatever block survives is tiny and
goes through a dense Smith reduction on Python integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import kernels


@dataclass(frozen=True)
class SparseIntegerMatrix:
    """Immutable sparse integer matrix stored as sorted ``(row, col, value)``."""

    nrows: int
    ncols: int
    entries: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        acc: dict[tuple[int, int], int] = {}
        for r, c, v in self.entries:
            if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, self.nrows, self.ncols))
            acc[(int(r), int(c))] = acc.get((int(r), int(c)), 0) + int(v)
        clean = tuple(sorted((r, c, v) for (r, c), v in acc.items() if v))
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        return cls(nrows, ncols, tuple((r, c, v) for r, row in enumerate(rows)
                                       for c, v in enumerate(row) if v))

    @classmethod
    def zero(cls, nrows: int, ncols: int):
        return cls(nrows, ncols, ())

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def rows(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.nrows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def columns(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.ncols)]
        for r, c, v in self.entries:
            out[c][r] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseIntegerMatrix":
        return SparseIntegerMatrix(self.ncols, self.nrows,
                                   tuple((c, r, v) for r, c, v in self.entries))

    def __matmul__(self, other: "SparseIntegerMatrix") -> "SparseIntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        orow = other.rows()
        acc: dict[tuple[int, int], int] = {}
        for r, k, v in self.entries:
            for c, w in orow[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseIntegerMatrix(self.nrows, other.ncols,
                                   tuple((r, c, v) for (r, c), v in acc.items() if v))

    def __neg__(self):
        return SparseIntegerMatrix(self.nrows, self.ncols,
                                   tuple((r, c, -v) for r, c, v in self.entries))

    def __add__(self, other: "SparseIntegerMatrix"):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s + %s" % (self.shape, other.shape))
        return SparseIntegerMatrix(self.nrows, self.ncols, self.entries + other.entries)

    def __sub__(self, other):
        return self + (-other)

    def to_json(self) -> dict:
        return {"nrows": self.nrows, "ncols": self.ncols,
                "entries": [list(e) for e in self.entries]}


def hstack(blocks: Sequence[SparseIntegerMatrix]) -> SparseIntegerMatrix:
    nrows = blocks[0].nrows if blocks else 0
    entries, off = [], 0
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("row counts differ")
        entries.extend((r, c + off, v) for r, c, v in b.entries)
        off += b.ncols
    return SparseIntegerMatrix(nrows, off, tuple(entries))


def vstack(blocks: Sequence[SparseIntegerMatrix]) -> SparseIntegerMatrix:
    return hstack([b.transpose() for b in blocks]).transpose()


# ---------------------------------------------------------------- Smith form

def _eliminate_units(rows: list[dict[int, int]]) -> tuple[int, list[dict[int, int]]]:
    """Remove every +-1 pivot by unimodular operations.

    Returns the number of unit divisors found and the surviving rows, none
    of which contains a unit entry.  Rows are chosen shortest-first to keep
    fill-in low.
    """
    rows = [dict(r) for r in rows if r]
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    alive = set(range(len(rows)))
    units = 0
    changed = True
    while changed:
        changed = False
        for i in sorted(alive, key=lambda k: len(rows[k])):
            if i not in alive:
                continue
            row = rows[i]
            pc = None
            best = None
            for c, v in row.items():
                if v in (1, -1):
                    cost = len(col_rows[c])
                    if best is None or cost < best:
                        pc, best = c, cost
                        if cost == 1:
                            break
            if pc is None:
                continue
            pv = row[pc]
            for k in list(col_rows[pc]):
                if k == i:
                    continue
                other = rows[k]
                f = other[pc] * pv  # pv is its own inverse
                for c, v in row.items():
                    nv = other.get(c, 0) - f * v
                    if nv:
                        if c not in other:
                            col_rows.setdefault(c, set()).add(k)
                        other[c] = nv
                    elif c in other:
                        del other[c]
                        col_rows[c].discard(k)
                if not other:
                    alive.discard(k)
            for c in row:
                col_rows[c].discard(i)
            alive.discard(i)
            units += 1
            changed = True
    return units, [rows[i] for i in sorted(alive) if rows[i]]


def _dense_diagonal(rows: list[dict[int, int]]) -> list[int]:
    """Nonzero diagonal of a dense unimodular reduction (not yet normalised)."""
    if not rows:
        return []
    cols = sorted({c for r in rows for c in r})
    cpos = {c: k for k, c in enumerate(cols)}
    a = [[0] * len(cols) for _ in rows]
    for i, r in enumerate(rows):
        for c, v in r.items():
            a[i][cpos[c]] = v
    small = max(abs(v) for r in rows for v in r.values()) < (1 << 30)
    if small:
        diag = kernels.diagonalize_small(np.array(a, dtype=np.int64))
        if diag is not None:
            return diag
    return _diagonalize_python(a)


def _diagonalize_python(a: list[list[int]]) -> list[int]:
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    top = 0
    while top < min(m, n):
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[top], row[pj] = row[pj], row[top]
        while True:
            p = a[top][top]
            dirty = False
            for i in range(top + 1, m):
                if a[i][top]:
                    q = a[i][top] // p
                    if q:
                        ri, rt = a[i], a[top]
                        for j in range(top, n):
                            ri[j] -= q * rt[j]
                    if a[i][top]:
                        dirty = True
            for j in range(top + 1, n):
                if a[top][j]:
                    q = a[top][j] // p
                    if q:
                        for i in range(top, m):
                            a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        dirty = True
            if not dirty:
                break
            # move a smaller remainder into the pivot position
            best = None
            for i in range(top + 1, m):
                v = a[i][top]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, top)
            for j in range(top + 1, n):
                v = a[top][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), top, j)
            _, pi, pj = best
            if pi != top:
                a[top], a[pi] = a[pi], a[top]
            else:
                for row in a:
                    row[top], row[pj] = row[pj], row[top]
        diag.append(a[top][top])
        top += 1
    return diag


def normalize_divisors(diag: Iterable[int]) -> list[int]:
    """Turn any nonzero diagonal into the divisor chain ``d1 | d2 | ...``."""
    d = sorted(abs(v) for v in diag if v)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return sorted(d)


def smith_normal_form(m: SparseIntegerMatrix) -> tuple[list[int], int]:
    """Invariant factors of ``m`` and its rank.

    >>> smith_normal_form(SparseIntegerMatrix.from_dense([[2, 0], [0, 3]]))
    ([1, 6], 2)
    """
    units, rest = _eliminate_units(m.rows())
    divisors = [1] * units + normalize_divisors(_dense_diagonal(rest))
    divisors = normalize_divisors(divisors)
    return divisors, len(divisors)


def integer_rank(m: SparseIntegerMatrix) -> int:
    units, rest = _eliminate_units(m.rows())
    return units + rank_mod_p_rows(rest, None)


# ---------------------------------------------------------------- fields

def rank_mod_p(m: SparseIntegerMatrix, p: int) -> int:
    """Rank over the prime field F_p."""
    return rank_mod_p_rows(m.rows(), p)


def rank_mod_p_rows(rows: list[dict[int, int]], p: int | None) -> int:
    """Rank over F_p, or over Q when ``p`` is None."""
    if p is None:
        return len(rref_rational(rows)[1])
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for r in rows:
        row = {c: v % p for c, v in r.items() if v % p}
        while row:
            c = min(row)
            if c not in pivots:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in row.items()}
                rank += 1
                break
            f = row[c]
            for k, v in pivots[c].items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def _inverse(v):
    # keep unit pivots integral; Fractions only appear for other pivots
    if v == 1 or v == -1:
        return int(v)
    return 1 / Fraction(v)


def rref_rational(rows: list[dict]):
    """Reduced row echelon form over Q.

    Entries may be ints or Fractions.  Returns ``(rows, pivot_columns)``
    where ``rows[k]`` has leading entry 1 in column ``pivot_columns[k]`` and
    zeros in every other pivot column.
    """
    pivots: dict[int, dict] = {}
    order: list[int] = []
    for r in rows:
        row = {c: v for c, v in r.items() if v}
        for c in [c for c in order if c in row]:
            f = row.get(c)
            if not f:
                continue
            for k, v in pivots[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            continue
        c = min(row)
        inv = _inverse(row[c])
        if inv != 1:
            row = {k: v * inv for k, v in row.items()}
        for other in order:
            prow = pivots[other]
            f = prow.get(c)
            if f:
                for k, v in row.items():
                    nv = prow.get(k, 0) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivots[c] = row
        order.append(c)
    order.sort()
    return [pivots[c] for c in order], order


def rational_rank(m: SparseIntegerMatrix) -> int:
    return integer_rank(m)


def rational_kernel(m: SparseIntegerMatrix) -> list[dict[int, Fraction]]:
    """Basis of the right null space over Q, one sparse vector per free column."""
    red, piv = rref_rational(m.rows())
    pivset = set(piv)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = {f: 1}
        for row, pc in zip(red, piv):
            x = row.get(f)
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def rational_solve(m: SparseIntegerMatrix, b: dict[int, Fraction]) -> dict[int, Fraction] | None:
    """Some ``x`` with ``m x = b`` over Q, or None if inconsistent."""
    aug = [dict(r) for r in m.rows()]
    for r, v in b.items():
        if v:
            aug[r][m.ncols] = v
    red, piv = rref_rational(aug)
    x: dict[int, Fraction] = {}
    for row, pc in zip(red, piv):
        if pc == m.ncols:
            return None
        v = row.get(m.ncols)
        if v:
            x[pc] = v
    return x


def vectors_to_matrix(vectors: Sequence[dict[int, Fraction]], nrows: int) -> SparseIntegerMatrix:
    """Columns from rational vectors, each scaled to a primitive integer vector."""
    entries = []
    for c, v in enumerate(vectors):
        if not v:
            continue
        den = 1
        for x in v.values():
            den = den * x.denominator // gcd(den, x.denominator)
        ints = {r: int(x * den) for r, x in v.items()}
        g = 0
        for x in ints.values():
            g = gcd(g, x)
        entries.extend((r, c, x // g) for r, x in ints.items())
    return SparseIntegerMatrix(nrows, len(vectors), tuple(entries))


def apply(m: SparseIntegerMatrix, v: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for r, c, x in m.entries:
        y = v.get(c)
        if y:
            out[r] = out.get(r, 0) + x * y
    return {r: x for r, x in out.items() if x}
