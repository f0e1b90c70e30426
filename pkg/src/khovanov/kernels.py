"""Hot loops: smoothing every marker vector, building incidence triplets,
and small-integer elimination.

Each kernel has a numba implementation and a pure numpy fallback; the
module-level dispatchers pick one according to ``_accel.USE_NUMBA``.
Both paths return identical arrays (checked in the test-suite).
"""
from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit

# slot pairs indexed by marker bit (0 = positive, 1 = negative)
_PAIRS = np.array([[[0, 3], [1, 2]], [[0, 1], [2, 3]]], dtype=np.int64)


# ---------------------------------------------------------------------------
# circle labels


@njit
def _circle_labels_numba(slots, n_edges, pairs):
    n = slots.shape[0]
    n_masks = 1 << n
    out = np.empty((n_masks, n_edges), dtype=np.int64)
    parent = np.empty(n_edges, dtype=np.int64)
    for mask in range(n_masks):
        for e in range(n_edges):
            parent[e] = e
        for k in range(n):
            bit = (mask >> k) & 1
            for p in range(2):
                x = slots[k, pairs[bit, p, 0]] - 1
                y = slots[k, pairs[bit, p, 1]] - 1
                while parent[x] != x:
                    x = parent[x]
                while parent[y] != y:
                    y = parent[y]
                if x < y:
                    parent[y] = x
                elif y < x:
                    parent[x] = y
        for e in range(n_edges):
            r = e
            while parent[r] != r:
                r = parent[r]
            out[mask, e] = r + 1
    return out


def _circle_labels_numpy(slots, n_edges, pairs):
    n = slots.shape[0]
    n_masks = 1 << n
    masks = np.arange(n_masks, dtype=np.int64)
    # each edge has two ends; through each end the smoothing arc leads to a neighbour
    nbr = np.empty((2, n_masks, n_edges), dtype=np.int64)
    seen = np.zeros(n_edges, dtype=np.int64)
    for k in range(n):
        bit = (masks >> k) & 1
        for s in range(4):
            e = slots[k, s] - 1
            partner_slot = np.empty(2, dtype=np.int64)
            for b in range(2):
                for p in range(2):
                    if pairs[b, p, 0] == s:
                        partner_slot[b] = pairs[b, p, 1]
                    elif pairs[b, p, 1] == s:
                        partner_slot[b] = pairs[b, p, 0]
            nbr[seen[e], :, e] = slots[k, partner_slot[bit]] - 1
            seen[e] += 1
    lab = np.broadcast_to(np.arange(n_edges, dtype=np.int64), (n_masks, n_edges)).copy()
    rows = masks[:, None]
    while True:
        new = np.minimum(lab, np.minimum(lab[rows, nbr[0]], lab[rows, nbr[1]]))
        if np.array_equal(new, lab):
            break
        lab = new
    return lab + 1


def circle_labels(slots: np.ndarray, n_edges: int) -> np.ndarray:
    """Canonical circle id of every edge, for every marker mask.

    ``out[mask, e - 1]`` is the minimum edge label on the circle through
    edge ``e`` when crossing ``k`` carries the negative marker iff bit
    ``k - 1`` of ``mask`` is set.
    """
    slots = np.ascontiguousarray(slots, dtype=np.int64).reshape(-1, 4)
    if n_edges == 0:
        return np.zeros((1 << slots.shape[0], 0), dtype=np.int64)
    if _accel.USE_NUMBA:
        return _circle_labels_numba(slots, n_edges, _PAIRS)
    return _circle_labels_numpy(slots, n_edges, _PAIRS)


# ---------------------------------------------------------------------------
# incidence triplets
#
# A generator is (mask, word): bit (c - 1 - r) of ``word`` is set iff the
# r-th circle (sorted by id) carries the sign -.  Global generator ids are
# ``offset[mask] + word``.


@njit
def _incidence_numba(slots, cidx, ccount, offset, n_loops):
    n = slots.shape[0]
    n_masks = 1 << n
    cap = 0
    for mask in range(n_masks):
        for k in range(n):
            if not (mask >> k) & 1:
                cap += 2 << ccount[mask]
    src = np.empty(cap, dtype=np.int64)
    dst = np.empty(cap, dtype=np.int64)
    val = np.empty(cap, dtype=np.int64)
    csrc = np.empty(cap // 2 + 1, dtype=np.int64)
    cdst = np.empty(cap // 2 + 1, dtype=np.int64)
    cval = np.empty(cap // 2 + 1, dtype=np.int64)
    m = 0
    mc = 0
    remap = np.empty(64, dtype=np.int64)
    for mask1 in range(n_masks):
        c1 = ccount[mask1]
        for k in range(n):
            if (mask1 >> k) & 1:
                continue
            mask2 = mask1 | (1 << k)
            c2 = ccount[mask2]
            t = 0
            rest = mask1 >> (k + 1)
            while rest:
                t += rest & 1
                rest >>= 1
            sign = -1 if t & 1 else 1
            # touched circles
            tx = -1
            ty = -1
            for s in range(4):
                r = cidx[mask1, slots[k, s] - 1]
                if tx == -1:
                    tx = r
                elif r != tx and ty == -1:
                    ty = r
            ux = -1
            uy = -1
            for s in range(4):
                r = cidx[mask2, slots[k, s] - 1]
                if ux == -1:
                    ux = r
                elif r != ux and uy == -1:
                    uy = r
            merge = ty != -1 and uy == -1
            split = ty == -1 and uy != -1
            if not (merge or split):
                continue
            # untouched circles: position in mask1 -> position in mask2
            ce1 = c1 - n_loops
            for r in range(c1):
                remap[r] = -1
            for e in range(cidx.shape[1]):
                r1 = cidx[mask1, e]
                if r1 != tx and r1 != ty and remap[r1] == -1:
                    remap[r1] = cidx[mask2, e]
            for lp in range(n_loops):
                remap[ce1 + lp] = c2 - n_loops + lp
            for w1 in range(1 << c1):
                base = 0
                for r in range(c1):
                    if r == tx or r == ty:
                        continue
                    if (w1 >> (c1 - 1 - r)) & 1:
                        base |= 1 << (c2 - 1 - remap[r])
                g1 = offset[mask1] + w1
                if merge:
                    nx = (w1 >> (c1 - 1 - tx)) & 1
                    ny = (w1 >> (c1 - 1 - ty)) & 1
                    if nx == 0 and ny == 0:
                        continue
                    w2 = base
                    if nx == 1 and ny == 1:
                        w2 |= 1 << (c2 - 1 - ux)
                    src[m] = g1
                    dst[m] = offset[mask2] + w2
                    val[m] = sign
                    m += 1
                else:
                    nx = (w1 >> (c1 - 1 - tx)) & 1
                    by = 1 << (c2 - 1 - ux)
                    bz = 1 << (c2 - 1 - uy)
                    if nx == 0:
                        src[m] = g1
                        dst[m] = offset[mask2] + base
                        val[m] = sign
                        m += 1
                    else:
                        src[m] = g1
                        dst[m] = offset[mask2] + (base | bz)
                        val[m] = sign
                        m += 1
                        src[m] = g1
                        dst[m] = offset[mask2] + (base | by)
                        val[m] = sign
                        m += 1
                        csrc[mc] = g1
                        cdst[mc] = offset[mask2] + base
                        cval[mc] = sign
                        mc += 1
    return src[:m], dst[:m], val[:m], csrc[:mc], cdst[:mc], cval[:mc]


def _incidence_numpy(slots, cidx, ccount, offset, n_loops):
    n = slots.shape[0]
    out = [[], [], [], [], [], []]
    for mask1 in range(1 << n):
        c1 = int(ccount[mask1])
        words = np.arange(1 << c1, dtype=np.int64)
        bit1 = lambda r: (words >> (c1 - 1 - r)) & 1  # noqa: E731
        for k in range(n):
            if (mask1 >> k) & 1:
                continue
            mask2 = mask1 | (1 << k)
            c2 = int(ccount[mask2])
            sign = -1 if bin(mask1 >> (k + 1)).count("1") & 1 else 1
            local = slots[k] - 1
            t1 = list(dict.fromkeys(int(v) for v in cidx[mask1, local]))
            t2 = list(dict.fromkeys(int(v) for v in cidx[mask2, local]))
            if len(t1) == len(t2):
                continue
            row1, row2 = cidx[mask1], cidx[mask2]
            remap = {}
            for e in range(cidx.shape[1]):
                r1 = int(row1[e])
                if r1 not in t1 and r1 not in remap:
                    remap[r1] = int(row2[e])
            for lp in range(n_loops):
                remap[c1 - n_loops + lp] = c2 - n_loops + lp
            base = np.zeros_like(words)
            for r1, r2 in remap.items():
                base |= bit1(r1) << (c2 - 1 - r2)
            g1 = offset[mask1] + words
            o2 = offset[mask2]
            if len(t1) == 2:  # merge
                nx, ny = bit1(t1[0]), bit1(t1[1])
                keep = (nx | ny) == 1
                w2 = base | ((nx & ny) << (c2 - 1 - t2[0]))
                out[0].append(g1[keep])
                out[1].append(o2 + w2[keep])
                out[2].append(np.full(int(keep.sum()), sign, dtype=np.int64))
            else:  # split
                nx = bit1(t1[0])
                by, bz = 1 << (c2 - 1 - t2[0]), 1 << (c2 - 1 - t2[1])
                plus = nx == 0
                minus = ~plus
                out[0].extend([g1[plus], g1[minus], g1[minus]])
                out[1].extend([o2 + base[plus], o2 + (base[minus] | bz), o2 + (base[minus] | by)])
                cnt = [int(plus.sum()), int(minus.sum()), int(minus.sum())]
                out[2].extend(np.full(c, sign, dtype=np.int64) for c in cnt)
                out[3].append(g1[minus])
                out[4].append(o2 + base[minus])
                out[5].append(np.full(cnt[1], sign, dtype=np.int64))
    return tuple(np.concatenate(p) if p else np.zeros(0, dtype=np.int64) for p in out)


def incidence_triplets(slots, cidx, ccount, offset, n_loops):
    """All nonzero incidence numbers of the Khovanov differential.

    Returns ``(src, dst, val, c_src, c_dst, c_val)``.  The first three
    arrays are the ordinary differential (global generator ids); the last
    three are the additional entries of the Z[c] complex, where the target
    is multiplied by one extra power of ``c``.
    """
    slots = np.ascontiguousarray(slots, dtype=np.int64).reshape(-1, 4)
    cidx = np.ascontiguousarray(cidx, dtype=np.int64)
    ccount = np.ascontiguousarray(ccount, dtype=np.int64)
    offset = np.ascontiguousarray(offset, dtype=np.int64)
    if slots.shape[0] == 0:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z, z, z, z
    if _accel.USE_NUMBA:
        return _incidence_numba(slots, cidx, ccount, offset, n_loops)
    return _incidence_numpy(slots, cidx, ccount, offset, n_loops)


# ---------------------------------------------------------------------------
# small-integer diagonalisation

_LIMIT = 1 << 40


@njit
def _diagonalize_numba(a):
    a = a.copy()
    nr, nc = a.shape
    diag = np.zeros(min(nr, nc), dtype=np.int64)
    nd = 0
    live_r = np.ones(nr, dtype=np.bool_)
    live_c = np.ones(nc, dtype=np.bool_)
    while True:
        best = 0
        pr = -1
        pc = -1
        for i in range(nr):
            if not live_r[i]:
                continue
            for j in range(nc):
                if live_c[j]:
                    v = a[i, j]
                    if v != 0:
                        av = v if v > 0 else -v
                        if pr == -1 or av < best:
                            best = av
                            pr = i
                            pc = j
                            if av == 1:
                                break
            if best == 1:
                break
        if pr == -1:
            break
        while True:
            p = a[pr, pc]
            dirty = False
            for i in range(nr):
                if i != pr and live_r[i] and a[i, pc] != 0:
                    q = a[i, pc] // p
                    for j in range(nc):
                        if live_c[j] and a[pr, j] != 0:
                            a[i, j] -= q * a[pr, j]
                            if a[i, j] > _LIMIT or a[i, j] < -_LIMIT:
                                return diag, -1
                    if a[i, pc] != 0:
                        dirty = True
            for j in range(nc):
                if j != pc and live_c[j] and a[pr, j] != 0:
                    q = a[pr, j] // p
                    for i in range(nr):
                        if live_r[i] and a[i, pc] != 0:
                            a[i, j] -= q * a[i, pc]
                            if a[i, j] > _LIMIT or a[i, j] < -_LIMIT:
                                return diag, -1
                    if a[pr, j] != 0:
                        dirty = True
            if not dirty:
                break
            # move the pivot to the smallest nonzero remainder in its row/column
            best = p if p > 0 else -p
            for i in range(nr):
                if live_r[i] and a[i, pc] != 0:
                    av = a[i, pc] if a[i, pc] > 0 else -a[i, pc]
                    if av < best:
                        best = av
                        pr = i
            for j in range(nc):
                if live_c[j] and a[pr, j] != 0:
                    av = a[pr, j] if a[pr, j] > 0 else -a[pr, j]
                    if av < best:
                        best = av
                        pc = j
        p = a[pr, pc]
        diag[nd] = p if p > 0 else -p
        nd += 1
        live_r[pr] = False
        live_c[pc] = False
    return diag, nd


def diagonalize_small(dense: np.ndarray):
    """Diagonal entries of an int64 matrix after unimodular reduction.

    Returns ``None`` when numba is disabled or an intermediate entry
    outgrows the safe range; callers then use the exact big-integer path.
    """
    if not _accel.USE_NUMBA or dense.size == 0:
        return None
    diag, nd = _diagonalize_numba(np.ascontiguousarray(dense, dtype=np.int64))
    if nd < 0:
        return None
    return [int(v) for v in diag[:nd]]
