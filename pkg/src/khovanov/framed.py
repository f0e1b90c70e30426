"""Framed gradings, the skein triple at a crossing, and its exact sequences.

In the framed grading a generator sits at ``(I, J) = (sigma, sigma + 2 tau)``
and the differential has bidegree ``(-2, 0)``; no orientation is needed.
Smoothing a crossing ``c`` (moved to the last position) both ways gives a
short exact sequence of complexes

    0 -> C_{I+1,J+1}(D-) --alpha--> C_{I,J}(D) --beta--> C_{I-1,J-1}(D+) -> 0

whose long homology sequence is verified over the rationals.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complex import Cell, GradedComplex
from .diagram import LinkDiagram, _heads_tails, _reorient, permute_crossings
from .homology import HomologyTable, RationalHomology, complex_homology, induced_rank
from .linalg import SparseIntegerMatrix, apply, rational_solve, smith_normal_form
from .states import StateSpace, state_space


class FramedComplex(GradedComplex):
    """Khovanov generators graded by ``(I, J)``; differential of bidegree ``(-2, 0)``."""

    def __init__(self, d: LinkDiagram, max_crossings: int | None = None):
        sp = state_space(d, max_crossings)
        I, J = sp.framed_gradings
        super().__init__(sp, I, J, -2)


def framed_complex(d: LinkDiagram, max_crossings: int | None = None) -> FramedComplex:
    return FramedComplex(d, max_crossings)


def framed_homology(d: LinkDiagram, max_crossings: int | None = None) -> HomologyTable:
    return complex_homology(FramedComplex(d, max_crossings), names=("I", "J"))


def regrade_to_framed(table: HomologyTable, w: int) -> HomologyTable:
    """Move an ``(i, j)`` table to ``(I, J) = (w - 2i, 3w - 2j)``."""
    return HomologyTable({(w - 2 * i, 3 * w - 2 * j): g for (i, j), g in table.groups.items()},
                         names=("I", "J"))


# ---------------------------------------------------------------- smoothing

@dataclass
class Smoothing:
    """One side of the skein triple plus how its edges sit inside ``D``.

    ``edge_image[x - 1]`` is the edge of the smoothing that contains edge
    ``x`` of ``D``, or ``-(loop index + 1)`` when it lies on a new free loop.
    """

    diagram: LinkDiagram
    edge_image: np.ndarray


@dataclass
class SkeinTriple:
    D: LinkDiagram
    D_plus: LinkDiagram
    D_minus: LinkDiagram
    crossing: int
    plus: Smoothing = field(repr=False)
    minus: Smoothing = field(repr=False)


def _smooth_last(D: LinkDiagram, positive: bool) -> Smoothing:
    n = D.n
    a, b, c, e = D.crossings[-1]
    glue = ((a, e), (b, c)) if positive else ((a, b), (c, e))
    parent = {x: x for x in range(1, D.edge_count + 1)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in glue:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    rest = [tuple(find(x) for x in cr) for cr in D.crossings[:-1]]
    used = {x for cr in rest for x in cr}
    new_loops = sorted({find(x) for x in parent} - used)
    loops = D.free_loops + len(new_loops)
    heads, _ = _heads_tails(D.crossings, D.over_forward)
    prefer = {}
    for x, occ in sorted(heads.items()):
        k, s = occ[0]
        if k < n - 1 and find(x) not in prefer:
            prefer[find(x)] = (k, s)
    if rest:
        small, mapping = _reorient(rest, loops, prefer)
    else:
        small, mapping = LinkDiagram((), loops), {}
    image = np.empty(D.edge_count, dtype=np.int64)
    for x in range(1, D.edge_count + 1):
        r = find(x)
        if r in mapping:
            image[x - 1] = mapping[r]
        else:
            image[x - 1] = -(D.free_loops + new_loops.index(r) + 1)
    return Smoothing(small, image)


def smooth_at(d: LinkDiagram, c: int) -> SkeinTriple:
    """Move crossing ``c`` (1-based) to the end and smooth it both ways."""
    if not 1 <= c <= d.n:
        raise ValueError("crossing %d out of range 1..%d" % (c, d.n))
    order = [k for k in range(1, d.n + 1) if k != c] + [c]
    D = permute_crossings(d, order)
    plus = _smooth_last(D, True)
    minus = _smooth_last(D, False)
    return SkeinTriple(D, plus.diagram, minus.diagram, c, plus, minus)


def _translate(sp_small: StateSpace, sp_big: StateSpace, sm: Smoothing, last_negative: bool):
    """Global id in ``D`` of every generator of the smoothing.

    The ``D`` state has the same markers with the last one set to
    ``last_negative``, the same circles (matched through shared edges) and
    the same signs.
    """
    n_small = sp_small.n
    masks = np.arange(1 << n_small, dtype=np.int64)
    big_masks = masks | (np.int64(1 << n_small) if last_negative else 0)
    E = sp_big.diagram.edge_count
    small_edges = sp_small.ccount - sp_small.diagram.free_loops
    big_edges = sp_big.ccount - sp_big.diagram.free_loops
    assert (sp_small.ccount == sp_big.ccount[big_masks]).all(), "circle counts differ"
    perm = np.full((len(masks), int(sp_small.ccount.max(initial=0))), -1, dtype=np.int64)
    if E:
        idx_big = sp_big.cidx[big_masks]
        img = sm.edge_image
        idx_small = np.empty((len(masks), E), dtype=np.int64)
        real = img > 0
        if real.any():
            idx_small[:, real] = sp_small.cidx[:, img[real] - 1]
        loop = ~real
        if loop.any():
            idx_small[:, loop] = small_edges[:, None] + (-img[loop] - 1)[None, :]
        rows = np.repeat(masks, E).reshape(len(masks), E)
        perm[rows, idx_small] = idx_big
    for ell in range(sp_big.diagram.free_loops):
        perm[masks, small_edges + ell] = big_edges[big_masks] + ell
    out = np.empty(sp_small.size, dtype=np.int64)
    for m in masks:
        c = int(sp_small.ccount[m])
        words = np.arange(1 << c, dtype=np.int64)
        big = np.zeros_like(words)
        for r in range(c):
            bit = (words >> (c - 1 - r)) & 1
            big |= bit << (c - 1 - perm[m, r])
        off = int(sp_small.offset[m])
        out[off:off + (1 << c)] = int(sp_big.offset[big_masks[m]]) + big
    return out


def _popcount(a):
    out = np.zeros_like(a)
    while a.any():
        out += a & 1
        a = a >> 1
    return out


@dataclass
class SkeinMaps:
    """The three framed complexes and the chain maps between them.

    ``alpha[g]`` is the ``D`` generator hit by generator ``g`` of ``D-``
    with sign ``alpha_sign[g]``; ``beta[h]`` is the ``D+`` generator hit by
    generator ``h`` of ``D``, or ``-1`` when ``h`` is killed.
    """

    triple: SkeinTriple
    cx: FramedComplex
    cx_plus: FramedComplex
    cx_minus: FramedComplex
    alpha: np.ndarray
    alpha_sign: np.ndarray
    beta: np.ndarray
    beta_sign: np.ndarray

    def _block(self, src_cx, dst_cx, target, sign, cell: Cell) -> SparseIntegerMatrix:
        tgt_cell = (cell[0] - 1, cell[1] - 1)
        cols = src_cx.generators(cell)
        entries = []
        for c, g in enumerate(cols):
            t = target[g]
            if t < 0:
                continue
            assert (dst_cx.h[t], dst_cx.q[t]) == tgt_cell, "chain map has the wrong degree"
            entries.append((int(dst_cx.local[t]), c, int(sign[g])))
        return SparseIntegerMatrix(dst_cx.rank(tgt_cell), len(cols), tuple(entries))

    def alpha_matrix(self, cell: Cell) -> SparseIntegerMatrix:
        """``C_cell(D-) -> C_{cell - (1, 1)}(D)``."""
        return self._block(self.cx_minus, self.cx, self.alpha, self.alpha_sign, cell)

    def beta_matrix(self, cell: Cell) -> SparseIntegerMatrix:
        """``C_cell(D) -> C_{cell - (1, 1)}(D+)``."""
        return self._block(self.cx, self.cx_plus, self.beta, self.beta_sign, cell)


def skein_chain_maps(t: SkeinTriple, twist: bool = True, mutate_beta: bool = False) -> SkeinMaps:
    """Build alpha and beta as generator maps.

    With the smoothed crossing last, every differential of ``D`` restricted
    to states negative there picks up one extra sign, so the plain
    inclusion anticommutes with the differentials.  ``twist`` multiplies it
    by ``(-1)^(negative markers of the D- state)``, which makes it commute.
    ``mutate_beta`` sends killed states somewhere instead (mutation testing).
    """
    n_max = t.D.n
    cx = FramedComplex(t.D, n_max)
    cxp = FramedComplex(t.D_plus, n_max)
    cxm = FramedComplex(t.D_minus, n_max)
    alpha = _translate(cxm.space, cx.space, t.minus, True)
    asign = np.ones(len(alpha), dtype=np.int64)
    if twist:
        masks, _ = cxm.space.generators
        asign = np.where(_popcount(masks) % 2 == 1, -1, 1).astype(np.int64)
    into_d = _translate(cxp.space, cx.space, t.plus, False)
    beta = np.full(cx.space.size, -1, dtype=np.int64)
    beta[into_d] = np.arange(cxp.space.size)
    bsign = np.ones(cx.space.size, dtype=np.int64)
    if mutate_beta:
        for g in np.flatnonzero(beta < 0):
            cell = (int(cx.h[g]) - 1, int(cx.q[g]) - 1)
            ids = cxp.generators(cell)
            if len(ids):
                beta[g] = ids[0]
    return SkeinMaps(t, cx, cxp, cxm, alpha, asign, beta, bsign)


# ---------------------------------------------------------------- short sequence

@dataclass
class CellVerdict:
    cell: Cell
    ok: bool
    checks: dict[str, bool]

    def to_json(self) -> dict:
        return {"I": self.cell[0], "J": self.cell[1], "ok": self.ok, "checks": self.checks}


@dataclass
class SESReport:
    ok: bool
    cells: list[CellVerdict]
    chain_maps_commute: bool

    def to_json(self) -> dict:
        return {"ok": self.ok, "chain_maps_commute": self.chain_maps_commute,
                "cells": [c.to_json() for c in self.cells]}


def commutation_defect(maps: SkeinMaps) -> list[tuple[str, Cell]]:
    """Cells where ``d alpha != alpha d`` or ``d beta != beta d``."""
    bad = []
    for cell in maps.cx_minus.cells:
        I, J = cell
        lhs = maps.cx.matrix((I - 1, J - 1)) @ maps.alpha_matrix(cell)
        rhs = maps.alpha_matrix((I - 2, J)) @ maps.cx_minus.matrix(cell)
        if lhs != rhs:
            bad.append(("alpha", cell))
    for cell in maps.cx.cells:
        I, J = cell
        lhs = maps.cx_plus.matrix((I - 1, J - 1)) @ maps.beta_matrix(cell)
        rhs = maps.beta_matrix((I - 2, J)) @ maps.cx.matrix(cell)
        if lhs != rhs:
            bad.append(("beta", cell))
    return bad


def anticommutes(maps: SkeinMaps) -> bool:
    """True when ``d alpha = -alpha d`` on every cell (the untwisted inclusion)."""
    for cell in maps.cx_minus.cells:
        I, J = cell
        lhs = maps.cx.matrix((I - 1, J - 1)) @ maps.alpha_matrix(cell)
        rhs = maps.alpha_matrix((I - 2, J)) @ maps.cx_minus.matrix(cell)
        if lhs != -rhs:
            return False
    return True


def verify_skein_ses(t: SkeinTriple | SkeinMaps) -> SESReport:
    """Check ``0 -> C(D-) -> C(D) -> C(D+) -> 0`` cell by cell over the integers."""
    maps = t if isinstance(t, SkeinMaps) else skein_chain_maps(t)
    cells = sorted(set(maps.cx.cells)
                   | {(I - 1, J - 1) for I, J in maps.cx_minus.cells}
                   | {(I + 1, J + 1) for I, J in maps.cx_plus.cells},
                   key=lambda c: (c[1], c[0]))
    verdicts = []
    for cell in cells:
        I, J = cell
        A = maps.alpha_matrix((I + 1, J + 1))
        B = maps.beta_matrix(cell)
        div_a, rank_a = smith_normal_form(A)
        div_b, rank_b = smith_normal_form(B)
        checks = {
            "alpha_injective": rank_a == A.ncols and all(x == 1 for x in div_a),
            "beta_surjective": rank_b == B.nrows and all(x == 1 for x in div_b),
            "beta_alpha_zero": (B @ A).is_zero(),
            "rank_im_alpha_eq_rank_ker_beta": rank_a == B.ncols - rank_b,
            # ker beta is saturated; equal rank plus saturated image gives equality
            "im_alpha_saturated": all(x == 1 for x in div_a),
        }
        verdicts.append(CellVerdict(cell, all(checks.values()), checks))
    commute = not commutation_defect(maps)
    return SESReport(all(v.ok for v in verdicts) and commute, verdicts, commute)


# ---------------------------------------------------------------- long sequence

class LiftError(RuntimeError):
    """A zig-zag lift did not exist; the short sequence cannot be exact."""


@dataclass
class NodeVerdict:
    complex: str
    cell: Cell
    dim: int
    rank_in: int
    rank_out: int
    ok: bool

    def to_json(self) -> dict:
        return {"complex": self.complex, "I": self.cell[0], "J": self.cell[1],
                "dim": self.dim, "rank_in": self.rank_in, "rank_out": self.rank_out,
                "ok": self.ok}


@dataclass
class LESReport:
    ok: bool
    nodes: list[NodeVerdict]

    def to_json(self) -> dict:
        return {"ok": self.ok, "nodes": [n.to_json() for n in self.nodes]}


def long_exact_sequence_check(t: SkeinTriple | SkeinMaps) -> LESReport:
    """Exactness over Q at every node of

        H_{I,J}(D-) -> H_{I-1,J-1}(D) -> H_{I-2,J-2}(D+) -> H_{I-2,J}(D-) -> ...

    The connecting map lifts a cycle of ``D+`` through beta, applies the
    differential of ``D`` and pulls the result back through alpha.
    """
    maps = t if isinstance(t, SkeinMaps) else skein_chain_maps(t)
    Hm, H0, Hp = (RationalHomology(c) for c in (maps.cx_minus, maps.cx, maps.cx_plus))
    rank_alpha: dict[Cell, int] = {}   # keyed by source cell in D-
    rank_beta: dict[Cell, int] = {}    # keyed by source cell in D
    rank_conn: dict[Cell, int] = {}    # keyed by source cell in D+

    for cell in maps.cx_minus.cells:
        A = maps.alpha_matrix(cell)
        tgt = (cell[0] - 1, cell[1] - 1)
        imgs = [apply(A, z) for z in Hm.cycles(cell)]
        rank_alpha[cell] = induced_rank(imgs, H0, tgt) if maps.cx.rank(tgt) else 0
    for cell in maps.cx.cells:
        B = maps.beta_matrix(cell)
        tgt = (cell[0] - 1, cell[1] - 1)
        imgs = [apply(B, z) for z in H0.cycles(cell)]
        rank_beta[cell] = induced_rank(imgs, Hp, tgt) if maps.cx_plus.rank(tgt) else 0
    for cell in maps.cx_plus.cells:
        I, J = cell
        up = (I + 1, J + 1)         # D cell lifting into cell
        down = (I - 1, J + 1)       # D cell after the differential
        back = (I, J + 2)           # D- cell pulled back into
        zs = Hp.cycles(cell)
        if not zs:
            rank_conn[cell] = 0
            continue
        B = maps.beta_matrix(up)
        dD = maps.cx.matrix(up)
        A = maps.alpha_matrix(back)
        imgs = []
        for z in zs:
            x = rational_solve(B, z)
            if x is None:
                raise LiftError("cycle of D+ at %s has no preimage under beta" % (cell,))
            y = apply(dD, x)
            if not y:
                imgs.append({})
                continue
            u = rational_solve(A, y)
            if u is None:
                raise LiftError("boundary at %s is not in the image of alpha" % (down,))
            imgs.append(u)
        rank_conn[cell] = induced_rank(imgs, Hm, back) if maps.cx_minus.rank(back) else 0

    nodes = []

    def node(name, H, cell, r_in, r_out):
        dim = H.betti(cell)
        nodes.append(NodeVerdict(name, cell, dim, r_in, r_out, r_in == dim - r_out))

    for cell in maps.cx_minus.cells:
        I, J = cell
        node("D-", Hm, cell, rank_conn.get((I, J - 2), 0), rank_alpha[cell])
    for cell in maps.cx.cells:
        I, J = cell
        node("D", H0, cell, rank_alpha.get((I + 1, J + 1), 0), rank_beta[cell])
    for cell in maps.cx_plus.cells:
        I, J = cell
        node("D+", Hp, cell, rank_beta.get((I + 1, J + 1), 0), rank_conn[cell])
    return LESReport(all(n.ok for n in nodes), nodes)
