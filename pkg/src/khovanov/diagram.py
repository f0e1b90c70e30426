"""Oriented link diagrams in planar-diagram (PD) notation.

A crossing ``X(a,b,c,d)`` lists the four edge labels counterclockwise,
starting from the incoming edge of the under-strand.  The under-strand
runs ``a -> c``; the direction of the over-strand (``b -> d`` or
``d -> b``) is inferred from the edge labels.

Conventions used throughout the package:

* a crossing whose over-strand runs ``b -> d`` has local writhe ``+1``;
* the positive marker joins ``a`` with ``d`` and ``b`` with ``c``, the
  negative marker joins ``a`` with ``b`` and ``c`` with ``d``.

With these two rules the positive marker is the orientation-respecting
smoothing exactly at positive crossings, which is what makes the
writhe-normalised bracket a Reidemeister I invariant.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

__all__ = [
    "PDError",
    "IllegalMoveError",
    "Crossing",
    "LinkDiagram",
    "CircleSet",
    "POSITIVE_PAIRS",
    "NEGATIVE_PAIRS",
    "parse_pd",
    "crossing_sign",
    "writhe",
    "resolve_state",
    "mirror",
    "permute_crossings",
    "faces",
    "apply_r_move",
    "apply_move_script",
    "rebuild_diagram",
]

# slot pairs joined by the smoothing of each marker
POSITIVE_PAIRS = ((0, 3), (1, 2))
NEGATIVE_PAIRS = ((0, 1), (2, 3))


class PDError(ValueError):
    """Malformed or inconsistent planar-diagram input."""


class IllegalMoveError(ValueError):
    """A Reidemeister move was requested at a site where it does not apply."""


class Crossing(NamedTuple):
    a: int
    b: int
    c: int
    d: int


@dataclass(frozen=True)
class LinkDiagram:
    """Validated oriented link diagram.

    ``crossings`` is ordered; position ``k - 1`` holds crossing number ``k``
    in the numeration used by the differential sign rule.
    """

    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    edge_count: int = field(init=False)
    over_forward: tuple[bool, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        crossings = tuple(Crossing(*map(int, x)) for x in self.crossings)
        object.__setattr__(self, "crossings", crossings)
        if self.free_loops < 0:
            raise PDError("negative free loop count")
        edge_count = _check_labels(crossings)
        object.__setattr__(self, "edge_count", edge_count)
        object.__setattr__(self, "over_forward", _infer_over_direction(crossings))

    @property
    def n(self) -> int:
        return len(self.crossings)

    def loop_ids(self) -> range:
        """Reserved circle identifiers of the free loops."""
        return range(self.edge_count + 1, self.edge_count + self.free_loops + 1)

    def to_pd(self) -> str:
        tokens = ["X(%d,%d,%d,%d)" % x for x in self.crossings]
        if self.free_loops or not tokens:
            tokens.append("O %d" % self.free_loops)
        return " ".join(tokens)

    def __str__(self):
        return self.to_pd()


def _check_labels(crossings) -> int:
    counts: dict[int, int] = {}
    for x in crossings:
        for label in x:
            if label < 1:
                raise PDError("edge labels must be positive integers, got %d" % label)
            counts[label] = counts.get(label, 0) + 1
    for label in sorted(counts):
        if counts[label] != 2:
            raise PDError(
                "edge multiplicity: edge %d occurs %d time(s), expected 2"
                % (label, counts[label]))
    edge_count = len(counts)
    if counts and max(counts) != edge_count:
        missing = min(set(range(1, edge_count + 1)) - set(counts))
        raise PDError("edge labels must be 1..%d; edge %d is missing" % (edge_count, missing))
    return edge_count


def _infer_over_direction(crossings) -> tuple[bool, ...]:
    """Solve for the over-strand direction of every crossing.

    Each edge must be incoming at exactly one of its two slots.  Slot 0 is
    always incoming, slot 2 always outgoing, slot 1 is incoming iff the
    over-strand runs b -> d, slot 3 iff it runs d -> b.  The resulting
    parity constraints are propagated from the under-strand anchors; a
    component that is never an under-strand falls back to the numbering.
    """
    n = len(crossings)
    occ: dict[int, list[tuple[int, int]]] = {}
    for k, x in enumerate(crossings):
        for s, label in enumerate(x):
            occ.setdefault(label, []).append((k, s))

    value: list[bool | None] = [None] * n
    links: list[list[tuple[int, bool]]] = [[] for _ in range(n)]
    fixed: list[tuple[int, bool]] = []

    # literal for "slot is incoming": (const, None) or (None, (k, negated))
    def literal(k, s):
        if s == 0:
            return True, None
        if s == 2:
            return False, None
        return None, (k, s == 3)

    for label, ((k1, s1), (k2, s2)) in occ.items():
        c1, v1 = literal(k1, s1)
        c2, v2 = literal(k2, s2)
        if v1 is None and v2 is None:
            if c1 == c2:
                raise PDError("open strand: edge %d has orientation conflict" % label)
        elif v1 is None or v2 is None:
            c = c1 if v1 is None else c2
            k, neg = v2 if v1 is None else v1
            fixed.append((k, (not c) ^ neg))
        else:
            (ka, na), (kb, nb) = v1, v2
            parity = not (na ^ nb)  # f_ka xor f_kb
            if ka == kb:
                if parity:
                    raise PDError("open strand: edge %d has orientation conflict" % label)
                continue
            links[ka].append((kb, parity))
            links[kb].append((ka, parity))

    def propagate(start):
        stack = [start]
        while stack:
            k = stack.pop()
            for other, parity in links[k]:
                want = value[k] ^ parity
                if value[other] is None:
                    value[other] = want
                    stack.append(other)
                elif value[other] != want:
                    raise PDError("open strand: orientation conflict at crossing %d" % (other + 1))

    for k, v in fixed:
        if value[k] is None:
            value[k] = v
            propagate(k)
        elif value[k] != v:
            raise PDError("open strand: orientation conflict at crossing %d" % (k + 1))
    for k in range(n):
        if value[k] is None:
            _, b, _, d = crossings[k]
            value[k] = d == b + 1 or b > d + 1
            propagate(k)
    return tuple(bool(v) for v in value)


_TOKEN = re.compile(
    r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)|O\s+(\d+)")


def parse_pd(text: str) -> LinkDiagram:
    """Parse one diagram from PD text (``X(a,b,c,d)`` tokens plus ``O k``)."""
    text = text.split("#", 1)[0]
    crossings = []
    loops = 0
    pos = 0
    stripped = text.strip()
    if not stripped:
        raise PDError("empty diagram")
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = text[pos:].split()[0]
            raise PDError("malformed token %r" % bad)
        if m.group(5) is not None:
            loops += int(m.group(5))
        else:
            crossings.append(Crossing(*(int(m.group(g)) for g in range(1, 5))))
        pos = m.end()
        if pos < len(text) and not text[pos].isspace():
            raise PDError("malformed token %r" % text[m.start():].split()[0])
    return LinkDiagram(tuple(crossings), loops)


def crossing_sign(d: LinkDiagram, k: int) -> int:
    """Local writhe of crossing ``k`` (1-based)."""
    if not 1 <= k <= d.n:
        raise IndexError("crossing index %d out of range 1..%d" % (k, d.n))
    return 1 if d.over_forward[k - 1] else -1


def writhe(d: LinkDiagram) -> int:
    return sum(1 if f else -1 for f in d.over_forward)


@dataclass(frozen=True)
class CircleSet:
    """The circles of a smoothing.

    ``circles[r]`` is the sorted tuple of edge labels on the r-th circle;
    ``ids[r]`` is its canonical identifier (the minimum edge label, or a
    reserved id above ``edge_count`` for free loops).  Circles are sorted
    by id.
    """

    ids: tuple[int, ...]
    circles: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.ids)

    def circle_of_edge(self, label: int) -> int:
        for cid, edges in zip(self.ids, self.circles):
            if label in edges:
                return cid
        raise KeyError(label)


def resolve_state(d: LinkDiagram, markers: Sequence[int]) -> CircleSet:
    """Smooth every crossing along its marker and return the circles."""
    if len(markers) != d.n:
        raise ValueError("marker vector has length %d, diagram has %d crossings"
                         % (len(markers), d.n))
    parent = list(range(d.edge_count + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, m in zip(d.crossings, markers):
        if m not in (1, -1):
            raise ValueError("markers must be +1 or -1")
        for s, t in (POSITIVE_PAIRS if m == 1 else NEGATIVE_PAIRS):
            ra, rb = find(x[s]), find(x[t])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for label in range(1, d.edge_count + 1):
        groups.setdefault(find(label), []).append(label)
    # union by minimum keeps each root equal to the circle's minimum label
    ids = sorted(groups)
    circles = [tuple(groups[r]) for r in ids]
    ids += list(d.loop_ids())
    circles += [()] * d.free_loops
    return CircleSet(tuple(ids), tuple(circles))


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Mirror image: swap ``b`` and ``d`` in every crossing."""
    return LinkDiagram(tuple(Crossing(a, dd, c, b) for a, b, c, dd in d.crossings),
                       d.free_loops)


def permute_crossings(d: LinkDiagram, order: Sequence[int]) -> LinkDiagram:
    """Renumber crossings; ``order[p]`` is the old (1-based) index placed at position p+1."""
    if sorted(order) != list(range(1, d.n + 1)):
        raise ValueError("order must be a permutation of 1..%d" % d.n)
    return LinkDiagram(tuple(d.crossings[k - 1] for k in order), d.free_loops)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    shift = d1.edge_count
    extra = tuple(Crossing(*(v + shift for v in x)) for x in d2.crossings)
    return LinkDiagram(d1.crossings + extra, d1.free_loops + d2.free_loops)


# ---------------------------------------------------------------------------
# rebuilding diagrams from raw crossing data


def _heads_tails(slots, forward):
    heads, tails = {}, {}
    for k, (x, f) in enumerate(zip(slots, forward)):
        for s in range(4):
            incoming = s == 0 or (s == 1 and f) or (s == 3 and not f)
            (heads if incoming else tails).setdefault(x[s], []).append((k, s))
    return heads, tails


def rebuild_diagram(slots, forward, loops: int = 0):
    """Canonically renumber raw oriented crossing data.

    ``slots[k]`` lists labels counterclockwise starting at the incoming
    under-edge, ``forward[k]`` tells whether the over-strand runs b -> d.
    Labels are arbitrary hashables, each used on exactly two slots.
    Returns the diagram and the map from raw labels to new edge labels.
    """
    slots = [tuple(x) for x in slots]
    heads, tails = _heads_tails(slots, forward)
    for label in set(heads) | set(tails):
        if len(heads.get(label, ())) != 1 or len(tails.get(label, ())) != 1:
            raise PDError("open strand: raw edge %r is not oriented consistently" % (label,))
    nxt = {}
    for label, [(k, s)] in heads.items():
        nxt[label] = slots[k][(s + 2) % 4]
    starts = sorted(heads, key=lambda lb: heads[lb][0])
    mapping: dict = {}
    counter = 1
    for start in starts:
        if start in mapping:
            continue
        label = start
        while label not in mapping:
            mapping[label] = counter
            counter += 1
            label = nxt[label]
    crossings = tuple(Crossing(*(mapping[v] for v in x)) for x in slots)
    d = LinkDiagram(crossings, loops)
    if d.over_forward != tuple(bool(f) for f in forward):
        raise AssertionError("rebuilt diagram lost its orientation")  # pragma: no cover
    return d, mapping


def _reorient(slots, loops, prefer=None):
    """Choose an orientation for unoriented raw crossing data and rebuild.

    ``slots[k]`` is counterclockwise with the under-strand on slots 0/2 in
    either direction.  ``prefer`` maps raw labels to a preferred head
    occurrence ``(k, s)``; each component follows the first hint found.
    """
    prefer = prefer or {}
    occ: dict = {}
    for k, x in enumerate(slots):
        for s, label in enumerate(x):
            occ.setdefault(label, []).append((k, s))
    head: dict = {}
    for label in sorted(occ, key=lambda lb: occ[lb][0]):
        if label in head:
            continue
        comp = []
        cur, (k, s) = label, occ[label][1]
        while True:  # walk the component without orientation
            comp.append((cur, (k, s)))
            k, s = k, (s + 2) % 4
            cur = slots[k][s]
            o = occ[cur]
            k, s = o[1] if o[0] == (k, s) else o[0]
            if cur == label:
                break
        flip = False
        for lb, h in comp:
            if lb in prefer:
                flip = prefer[lb] != h
                break
        for lb, h in comp:
            if flip:
                o = occ[lb]
                h = o[1] if o[0] == h else o[0]
            head[lb] = h
    new_slots, forward = [], []
    for k, x in enumerate(slots):
        x = tuple(x)
        rotated = head[x[0]] != (k, 0)
        if rotated:
            x = (x[2], x[3], x[0], x[1])
        new_slots.append(x)
        forward.append(head[x[1]] == (k, 3 if rotated else 1))
    return rebuild_diagram(new_slots, forward, loops)


# ---------------------------------------------------------------------------
# faces and Reidemeister moves


def faces(d: LinkDiagram) -> list[list[tuple[int, int]]]:
    """Faces of the diagram graph as cycles of darts ``(k, s)``.

    Dart ``(k, s)`` leaves crossing k (0-based) through slot s; the face
    lies on the left of the dart.  Free loops are ignored.
    """
    occ: dict[int, list[tuple[int, int]]] = {}
    for k, x in enumerate(d.crossings):
        for s, label in enumerate(x):
            occ.setdefault(label, []).append((k, s))
    seen = set()
    result = []
    for k in range(d.n):
        for s in range(4):
            if (k, s) in seen:
                continue
            face = []
            dart = (k, s)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                label = d.crossings[dart[0]][dart[1]]
                o = occ[label]
                k2, s2 = o[1] if o[0] == dart else o[0]
                dart = (k2, (s2 - 1) % 4)
            result.append(face)
    return result


def _graph_components(d: LinkDiagram) -> list[int]:
    """Component index of every crossing in the diagram graph."""
    parent = list(range(d.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    where: dict[int, int] = {}
    for k, x in enumerate(d.crossings):
        for label in x:
            if label in where:
                parent[find(where[label])] = find(k)
            where[label] = k
    return [find(k) for k in range(d.n)]


def _is_tail(d: LinkDiagram, k: int, s: int) -> bool:
    f = d.over_forward[k]
    return s == 2 or (s == 3 and f) or (s == 1 and not f)


def _edge_ends(d: LinkDiagram, label: int):
    tail = head = None
    for k, x in enumerate(d.crossings):
        for s, v in enumerate(x):
            if v == label:
                if _is_tail(d, k, s):
                    tail = (k, s)
                else:
                    head = (k, s)
    return tail, head


class _Raw:
    """Mutable copy of a diagram used while performing a move."""

    def __init__(self, d: LinkDiagram):
        self.d = d
        self.slots = [list(x) for x in d.crossings]
        self.forward = list(d.over_forward)
        self.loops = list(d.loop_ids())
        self.fresh = d.edge_count + d.free_loops + 1

    def new_label(self):
        self.fresh += 1
        return self.fresh

    def split(self, label: int):
        """Cut an edge (or free loop) open; returns (tail piece, head piece).

        The tail piece keeps its far end at the edge's tail crossing, the
        head piece at the head crossing.  For a free loop both pieces are
        the same new strand.
        """
        if label in self.loops:
            self.loops.remove(label)
            piece = self.new_label()
            return piece, piece
        if not 1 <= label <= self.d.edge_count:
            raise IllegalMoveError("no edge or free loop with id %d" % label)
        _, (k, s) = _edge_ends(self.d, label)
        head_piece = self.new_label()
        self.slots[k][s] = head_piece
        return label, head_piece

    def add(self, slots, forward):
        self.slots.append(list(slots))
        self.forward.append(forward)

    def build(self) -> LinkDiagram:
        d, _ = rebuild_diagram(self.slots, self.forward, len(self.loops))
        return d


_COMPASS = ("E", "N", "W", "S")


def _compass_crossing(labels: dict, under_in: str, over_in: str):
    i = _COMPASS.index(under_in)
    order = [_COMPASS[(i + r) % 4] for r in range(4)]
    return tuple(labels[c] for c in order), order[1] == over_in


def _r1(d: LinkDiagram, site: int, positive: bool) -> LinkDiagram:
    raw = _Raw(d)
    e_in, e_out = raw.split(site)
    loop = raw.new_label()
    if positive:
        raw.add((e_in, loop, loop, e_out), True)
    else:
        raw.add((e_in, e_out, loop, loop), False)
    return raw.build()


def _edge_sides(d: LinkDiagram, label: int) -> list[tuple[int, bool]]:
    """(face index, face is on the left of the edge) for both sides of an edge."""
    out = []
    for fi, face in enumerate(faces(d)):
        for k, s in face:
            if d.crossings[k][s] == label:
                out.append((fi, _is_tail(d, k, s)))
    return out


def _r2(d: LinkDiagram, site) -> LinkDiagram:
    try:
        over_edge, under_edge = (int(v) for v in site)
    except (TypeError, ValueError):
        raise IllegalMoveError("R2 site must be a pair (over edge, under edge)") from None
    if over_edge == under_edge:
        raise IllegalMoveError("R2 needs two distinct strands")
    loops = set(d.loop_ids())
    for e in (over_edge, under_edge):
        if e not in loops and not 1 <= e <= d.edge_count:
            raise IllegalMoveError("no edge or free loop with id %d" % e)
    # which side of each strand faces the shared region
    left_under, left_over = True, False
    if over_edge not in loops and under_edge not in loops:
        comp = _graph_components(d)
        t1, _ = _edge_ends(d, under_edge)
        t2, _ = _edge_ends(d, over_edge)
        if comp[t1[0]] == comp[t2[0]]:
            s1 = _edge_sides(d, under_edge)
            s2 = _edge_sides(d, over_edge)
            shared = [(l1, l2) for f1, l1 in s1 for f2, l2 in s2 if f1 == f2]
            if not shared:
                raise IllegalMoveError(
                    "edges %d and %d do not bound a common face" % site)
            left_under, left_over = shared[0]
        else:
            left_under = _edge_sides(d, under_edge)[0][1]
            left_over = _edge_sides(d, over_edge)[0][1]
    elif under_edge not in loops:
        left_under = _edge_sides(d, under_edge)[0][1]
    elif over_edge not in loops:
        left_over = _edge_sides(d, over_edge)[0][1]

    raw = _Raw(d)
    u_tail, u_head = raw.split(under_edge)
    o_tail, o_head = raw.split(over_edge)
    m_under, m_over = raw.new_label(), raw.new_label()
    # model: under-strand along y=0, region above it; over-strand dips down
    # from above, crossing at X (west) and then Y (east)
    dir1 = 1 if left_under else -1
    dir2 = -1 if left_over else 1
    west1, east1 = (u_tail, u_head) if dir1 == 1 else (u_head, u_tail)
    west2, east2 = (o_tail, o_head) if dir2 == 1 else (o_head, o_tail)
    x_labels = {"W": west1, "E": m_under, "N": west2, "S": m_over}
    y_labels = {"W": m_under, "E": east1, "N": east2, "S": m_over}
    under_in = "W" if dir1 == 1 else "E"
    x = _compass_crossing(x_labels, under_in, "N" if dir2 == 1 else "S")
    y = _compass_crossing(y_labels, under_in, "S" if dir2 == 1 else "N")
    raw.add(*x)
    raw.add(*y)
    return raw.build()


def _r3(d: LinkDiagram, site) -> LinkDiagram:
    try:
        edges = {int(v) for v in site}
    except (TypeError, ValueError):
        raise IllegalMoveError("R3 site must be three edge labels") from None
    if len(edges) != 3:
        raise IllegalMoveError("R3 site must name three distinct edges")
    tri = None
    for face in faces(d):
        if len(face) == 3 and {d.crossings[k][s] for k, s in face} == edges:
            tri = face
            break
    if tri is None:
        raise IllegalMoveError("edges %s do not bound a triangular face" % sorted(edges))
    ks = [k for k, _ in tri]
    if len(set(ks)) != 3:
        raise IllegalMoveError("triangle must have three distinct crossings")
    xs = d.crossings
    dep = [s for _, s in tri]                 # departure slot of e_r at k_r
    arr = [(dep[(r + 1) % 3] + 1) % 4 for r in range(3)]  # arrival slot at k_{r+1}
    over = [arr[r] % 2 == 1 for r in range(3)]  # strand r is over at k_{r+1}
    if over[0] == over[1] == over[2]:
        raise IllegalMoveError("alternating triangle: no strand passes over or under both others")
    e = [xs[ks[r]][dep[r]] for r in range(3)]
    ext_minus = [xs[ks[r]][(dep[r] + 2) % 4] for r in range(3)]
    ext_plus = [xs[ks[(r + 1) % 3]][(arr[r] + 2) % 4] for r in range(3)]
    slots = [list(x) for x in xs]
    for r in range(3):
        k = ks[(r + 1) % 3]
        r1 = (r + 1) % 3
        slots[k][arr[r]] = ext_minus[r]
        slots[k][(arr[r] + 2) % 4] = e[r]
        slots[k][dep[r1]] = ext_plus[r1]
        slots[k][(dep[r1] + 2) % 4] = e[r1]
    out, _ = rebuild_diagram(slots, d.over_forward, d.free_loops)
    return out


def apply_r_move(d: LinkDiagram, move: str, site) -> LinkDiagram:
    """Apply a Reidemeister move.

    ``move`` is one of ``R1+``, ``R1-``, ``R2``, ``R3``.  Sites: an edge
    label (or free-loop id) for R1, a pair ``(over, under)`` of edges or
    free loops bounding a common face for R2, and the three edge labels of
    a non-alternating triangular face for R3.  The result is renumbered
    canonically; new crossings are appended after the existing ones.
    """
    if move in ("R1+", "R1-"):
        try:
            label = int(site[0] if isinstance(site, (tuple, list)) else site)
        except (TypeError, ValueError, IndexError):
            raise IllegalMoveError("R1 site must be an edge label") from None
        if label not in d.loop_ids() and not 1 <= label <= d.edge_count:
            raise IllegalMoveError("no edge or free loop with id %d" % label)
        return _r1(d, label, move == "R1+")
    if move == "R2":
        return _r2(d, site)
    if move == "R3":
        return _r3(d, site)
    raise IllegalMoveError("unknown move %r" % move)


def r3_sites(d: LinkDiagram) -> list[tuple[int, int, int]]:
    """All triangular faces where R3 applies, as sorted edge triples."""
    out = []
    for face in faces(d):
        if len(face) != 3 or len({k for k, _ in face}) != 3:
            continue
        dep = [s for _, s in face]
        arr = [(dep[(r + 1) % 3] + 1) % 4 for r in range(3)]
        over = [a % 2 == 1 for a in arr]
        if not over[0] == over[1] == over[2]:
            out.append(tuple(sorted(d.crossings[k][s] for k, s in face)))
    return out


def apply_move_script(d: LinkDiagram, script: str) -> list[tuple[str, LinkDiagram]]:
    """Run ``"R1+ 3; R2 1 4; R3 2 5 7"`` style scripts.

    Returns the list of (move, resulting diagram) pairs, each move applied
    to the result of the previous one.
    """
    out = []
    cur = d
    for step in script.split(";"):
        parts = step.split()
        if not parts:
            continue
        move, args = parts[0], parts[1:]
        try:
            site = tuple(int(a) for a in args)
        except ValueError:
            raise IllegalMoveError("bad move step %r" % step.strip()) from None
        cur = apply_r_move(cur, move, site if len(site) != 1 else site[0])
        out.append((move, cur))
    return out
