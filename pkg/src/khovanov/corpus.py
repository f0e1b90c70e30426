"""Small diagrams used by the tests, the CLI and the benchmark."""
from __future__ import annotations

from typing import Sequence

from .diagram import LinkDiagram, parse_pd, rebuild_diagram


def braid_closure(word: Sequence[int], strands: int) -> LinkDiagram:
    """PD diagram of the closure of a braid word.

    ``k`` in the word is the positive crossing between strands ``k`` and
    ``k + 1`` (counted from 1), ``-k`` the negative one.  Strands not touched
    by any letter become free loops.
    """
    pos = [("s", i) for i in range(strands)]
    slots, forward = [], []
    for t, letter in enumerate(word):
        i = abs(letter) - 1
        if not 0 <= i < strands - 1:
            raise ValueError("generator %d needs more than %d strands" % (letter, strands))
        x, y = pos[i], pos[i + 1]
        x2, y2 = ("e", t, 0), ("e", t, 1)
        if letter > 0:
            slots.append((x, y, y2, x2))
            forward.append(True)
        else:
            slots.append((y, y2, x2, x))
            forward.append(False)
        pos[i], pos[i + 1] = x2, y2
    rename = {}
    loops = 0
    for i in range(strands):
        if pos[i] == ("s", i):
            loops += 1
        else:
            rename[pos[i]] = ("s", i)
    # follow chains in case a closing label maps to another closing label
    closed = [tuple(rename.get(v, v) for v in x) for x in slots]
    d, _ = rebuild_diagram(closed, forward, loops)
    return d


CORPUS: dict[str, str] = {
    "unknot-0": "O 1",
    "unlink-2": "O 2",
    "kink-positive": "X(1,2,2,1)",
    "kink-negative": "X(1,1,2,2)",
    "hopf": "X(1,3,2,4) X(3,1,4,2)",
    "trefoil-right": "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
    "trefoil-left": "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)",
}

_BRAIDS: dict[str, tuple[tuple[int, ...], int]] = {
    "unknot-2": ((1, -2), 3),
    "figure-eight": ((1, -2, 1, -2), 3),
    "borromean": ((1, -2, 1, -2, 1, -2), 3),
    "six-crossing-knot": ((1, 1, 1, -2, 1, -2), 3),
    "torus-3-4": ((1, 2, 1, 2, 1, 2, 1, 2), 3),
}

for _name, (_word, _strands) in _BRAIDS.items():
    CORPUS[_name] = braid_closure(_word, _strands).to_pd()


def corpus_diagrams(max_crossings: int | None = None) -> dict[str, LinkDiagram]:
    out = {name: parse_pd(pd) for name, pd in CORPUS.items()}
    if max_crossings is not None:
        out = {k: d for k, d in out.items() if d.n <= max_crossings}
    return out


UNKNOT_DIAGRAMS = ("unknot-0", "kink-positive", "kink-negative", "unknot-2")
