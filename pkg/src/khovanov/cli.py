"""Command-line interface: ``khovanov <command> [PD file] [options]``.

Exit status is 0 on success, 1 when a verification finds a defect and 2
for unreadable input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from .bracket import bracket_skein_oracle, jones_K, kauffman_bracket
from .complex import ChainComplex, check_d_squared, dump_complex
from .diagram import (IllegalMoveError, LinkDiagram, PDError, apply_move_script, parse_pd,
                      permute_crossings, writhe)
from .framed import (FramedComplex, LiftError, framed_homology, long_exact_sequence_check,
                     regrade_to_framed, skein_chain_maps, smooth_at, verify_skein_ses)
from .homology import (check_against_field_oracle, complex_homology, graded_euler_char,
                       homology_table)
from .polyring import JWindow, ZcComplex, zc_homology_table
from .polynomial import LaurentPolynomial
from .states import DEFAULT_MAX_CROSSINGS, CrossingBoundError, check_bound

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_diagram(args) -> LinkDiagram:
    if args.pd is not None:
        text = args.pd
    elif args.source in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError("cannot read %s: %s" % (args.source, exc.strerror)) from None
    d = parse_pd(text)
    check_bound(d, args.max_crossings)
    if args.order_perm is not None:
        order = list(range(1, d.n + 1))
        random.Random(args.order_perm).shuffle(order)
        d = permute_crossings(d, order)
    return d


def _poly_out(p: LaurentPolynomial, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"variable": p.var, "terms": p.to_json()})
    return str(p)


def cmd_bracket(d, args):
    return EXIT_OK, _poly_out(kauffman_bracket(d, args.max_crossings), args.format)


def cmd_jones(d, args):
    return EXIT_OK, _poly_out(jones_K(d, args.max_crossings), args.format)


def cmd_homology(d, args):
    cx = ChainComplex(d, args.max_crossings)
    if args.dump_complex:
        with open(args.dump_complex, "w", encoding="utf-8") as fh:
            fh.write(dump_complex(cx))
    table = complex_homology(cx)
    return EXIT_OK, table.to_json() if args.format == "json" else table.render()


def cmd_framed(d, args):
    cx = FramedComplex(d, args.max_crossings)
    if args.dump_complex:
        with open(args.dump_complex, "w", encoding="utf-8") as fh:
            fh.write(dump_complex(cx, names=("I", "J")))
    table = complex_homology(cx, names=("I", "J"))
    return EXIT_OK, table.to_json() if args.format == "json" else table.render()


def cmd_skein_check(d, args):
    if args.crossing is not None:
        if not 1 <= args.crossing <= d.n:
            raise InputError("--crossing %d out of range 1..%d" % (args.crossing, d.n))
        crossings = [args.crossing]
    else:
        crossings = list(range(1, d.n + 1))
    if not crossings:
        raise InputError("skein-check needs a diagram with at least one crossing")
    ses, les, ok = [], [], True
    for c in crossings:
        maps = skein_chain_maps(smooth_at(d, c))
        s = verify_skein_ses(maps)
        try:
            l_rep = long_exact_sequence_check(maps)
            l_json, l_ok = l_rep.to_json(), l_rep.ok
        except LiftError as exc:
            l_json, l_ok = {"ok": False, "error": str(exc)}, False
        ses.append(dict(s.to_json(), crossing=c))
        les.append(dict(l_json, crossing=c))
        ok = ok and s.ok and l_ok
    if args.format == "json":
        text = json.dumps({"ses": ses, "les": les}, sort_keys=True)
    else:
        lines = []
        for s, l_ in zip(ses, les):
            lines.append("crossing %d: short sequence %s (%d cells), long sequence %s"
                         % (s["crossing"], "exact" if s["ok"] else "FAILED", len(s["cells"]),
                            "exact" if l_["ok"] else "FAILED"))
        text = "\n".join(lines)
    return (EXIT_OK if ok else EXIT_FAIL), text


def cmd_zc(d, args):
    zc = ZcComplex(d, args.max_crossings)
    js = zc.j.tolist()
    lo = args.j_min if args.j_min is not None else (min(js) if js else 0)
    hi = args.j_max if args.j_max is not None else lo + 12
    try:
        window = JWindow(lo, hi)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    res = zc_homology_table(d, window, args.max_crossings)
    return EXIT_OK, res.to_json() if args.format == "json" else res.render()


def _verify(d: LinkDiagram, args) -> list[dict]:
    checks = []

    def add(name, ok, detail=""):
        checks.append({"check": name, "ok": bool(ok), "detail": detail})

    cx = ChainComplex(d, args.max_crossings)
    rep = check_d_squared(cx)
    add("d_squared_zero", rep.ok, "" if rep.ok else "nonzero product from cell %s" % (rep.failure,))
    jones = jones_K(d, args.max_crossings)
    table = complex_homology(cx)
    add("euler_chain_groups", graded_euler_char(cx) == jones)
    add("euler_homology", graded_euler_char(table) == jones)
    br = kauffman_bracket(d, args.max_crossings)
    add("bracket_oracle", bracket_skein_oracle(d, args.max_crossings) == br)
    fr = framed_homology(d, args.max_crossings)
    add("framed_regrading", fr == regrade_to_framed(table, writhe(d)))
    orc = check_against_field_oracle(cx, table)
    add("field_oracle", orc.ok, "; ".join(orc.mismatches))
    if args.moves:
        a = LaurentPolynomial.monomial("A")
        cur, cur_br = d, br
        for move, nxt in apply_move_script(d, args.moves):
            check_bound(nxt, args.max_crossings)
            nbr = kauffman_bracket(nxt, args.max_crossings)
            factor = {"R1+": -a ** 3, "R1-": -a ** -3}.get(move, LaurentPolynomial.constant("A", 1))
            add("bracket_%s" % move, nbr == factor * cur_br)
            add("jones_%s" % move, jones_K(nxt, args.max_crossings) == jones)
            add("homology_%s" % move, homology_table(nxt, args.max_crossings) == table)
            if move in ("R2", "R3"):
                add("framed_%s" % move, framed_homology(nxt, args.max_crossings) == fr)
            cur, cur_br = nxt, nbr
    return checks


def cmd_verify(d, args):
    checks = _verify(d, args)
    ok = all(c["ok"] for c in checks)
    if args.format == "json":
        text = json.dumps({"ok": ok, "checks": checks}, sort_keys=True)
    else:
        text = "\n".join("%-20s %s%s" % (c["check"], "ok" if c["ok"] else "FAILED",
                                         " (%s)" % c["detail"] if c["detail"] else "")
                         for c in checks)
    return (EXIT_OK if ok else EXIT_FAIL), text


COMMANDS = {
    "bracket": (cmd_bracket, "Kauffman bracket in A"),
    "jones": (cmd_jones, "Jones polynomial in q"),
    "homology": (cmd_homology, "integral Khovanov homology H^{i,j}"),
    "framed": (cmd_framed, "framed homology H_{I,J}"),
    "skein-check": (cmd_skein_check, "short and long exact skein sequences"),
    "zc": (cmd_zc, "homology of the Z[c] complex over a j-window"),
    "verify": (cmd_verify, "self-checks, optionally across a Reidemeister move script"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="khovanov", description="Khovanov homology of link diagrams")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, helptext) in COMMANDS.items():
        s = sub.add_parser(name, help=helptext, description=helptext)
        s.add_argument("source", nargs="?", help="file with a PD code; stdin when omitted or '-'")
        s.add_argument("--pd", help="PD code given inline instead of a file")
        s.add_argument("--format", choices=("text", "json"), default="text")
        s.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS, metavar="N")
        s.add_argument("--order-perm", type=int, default=None, metavar="SEED",
                       help="renumber crossings by a random permutation with this seed")
        if name == "skein-check":
            s.add_argument("--crossing", type=int, default=None, metavar="C",
                           help="crossing to smooth (default: every crossing)")
        if name == "zc":
            s.add_argument("--j-min", type=int, default=None)
            s.add_argument("--j-max", type=int, default=None)
        if name == "verify":
            s.add_argument("--moves", default=None, metavar="SCRIPT",
                           help='e.g. "R1+ 3; R2 1 4; R3 2 5 7"')
        if name in ("homology", "framed"):
            s.add_argument("--dump-complex", default=None, metavar="PATH",
                           help="write generators and differentials as JSON")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        d = _read_diagram(args)
        code, text = handler(d, args)
    except (PDError, CrossingBoundError, IllegalMoveError, InputError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    print(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
