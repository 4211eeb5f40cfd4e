"""Command-line front end: ``psb <command> ...``.

Exit codes: 0 success, 2 bad input, 3 internal contract violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .adjacency import test_nonadjacent_exhaustive, test_nonadjacent_linear
from .errors import PSBError, WitnessAssemblyFailure
from .oracle import complementary_pairs
from .skeleton import METHODS, build_skeleton, export_graph, graph_stats
from .solver import CostMatrix, solve_bruteforce, solve_dp
from .tours import Tour, TourEncoding, classify_peaks, count_psb, decode, encode, enumerate_psb, is_psb

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3
DEFAULT_MAX_ORACLE_N = 9


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dump(obj, pretty: bool) -> str:
    if pretty:
        return json.dumps(obj, indent=2)
    return json.dumps(obj, separators=(",", ":"))


def _encoding(text: str, n: int | None) -> TourEncoding:
    text = text.strip()
    if text.startswith("{"):
        e = TourEncoding.from_json(json.loads(text))
        if n is not None and e.n != n:
            raise ValueError(f"--n {n} does not match encoding with n={e.n}")
        return e
    return TourEncoding.parse(text, n)


def _max_oracle_n() -> int:
    raw = os.environ.get("PSB_MAX_ORACLE_N")
    return int(raw) if raw else DEFAULT_MAX_ORACLE_N


def cmd_encode(args) -> str:
    e = encode(Tour.parse(args.tour))
    return _dump(e.to_json(), args.pretty) if args.json else str(e)


def cmd_decode(args) -> str:
    t = decode(_encoding(args.enc, args.n))
    return _dump({"n": t.n, "tour": t.cycle()}, args.pretty) if args.json else str(t)


def cmd_validate(args) -> str:
    if (args.tour is None) == (args.enc is None):
        raise ValueError("give exactly one of --tour or --enc")
    t = Tour.parse(args.tour) if args.tour is not None else decode(_encoding(args.enc, args.n))
    out = {
        "n": t.n,
        "tour": t.cycle(),
        "psb": is_psb(t),
        "peaks": [{"city": p.city, "kind": p.kind.value} for p in classify_peaks(t)],
    }
    if out["psb"]:
        out["encoding"] = str(encode(t))
    return _dump(out, args.pretty)


def cmd_enumerate(args) -> str:
    if args.count_only:
        return str(count_psb(args.n))
    if args.text:
        return "\n".join(str(e) for e in enumerate_psb(args.n))
    encs = [e.tokens() for e in enumerate_psb(args.n)]
    return _dump({"n": args.n, "count": len(encs), "encodings": encs}, args.pretty)


def cmd_adjacency(args) -> str:
    x, y = _encoding(args.x, args.n), _encoding(args.y, args.n)
    if args.method == "oracle":
        limit = _max_oracle_n()
        if x.n > limit:
            raise ValueError(
                f"oracle method refuses n={x.n} > {limit} (exponential search; "
                f"raise PSB_MAX_ORACLE_N to override)")
        if x == y:
            raise ValueError("adjacency is only defined for two distinct tours")
        found = complementary_pairs(decode(x), decode(y))
        out = {"adjacent": not found}
        if found:
            z, t = found[0]
            out.update(z=z.cycle(), t=t.cycle())
    else:
        test = test_nonadjacent_linear if args.method == "linear" else test_nonadjacent_exhaustive
        out = test(x, y).to_json()
    return _dump(out, args.pretty)


def cmd_skeleton(args) -> str:
    g = build_skeleton(args.n, method=args.method, workers=args.workers, cap=args.cap)
    if args.format == "stats":
        return _dump(graph_stats(g).to_json(), args.pretty)
    return export_graph(g, args.format).decode().rstrip("\n")


def cmd_solve(args) -> str:
    with open(args.costs) as fh:
        text = fh.read()
    cm = CostMatrix.from_json(json.loads(text)) if text.lstrip().startswith("{") else CostMatrix.parse(text)
    tour, cost = (solve_dp if args.method == "dp" else solve_bruteforce)(cm)
    return _dump({"n": cm.n, "tour": tour.cycle(), "encoding": str(encode(tour)), "cost": cost},
                 args.pretty)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="psb", description="Pyramidal tours with step-backs: encoding, "
                "vertex adjacency, skeleton and solver.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("encode", parents=[common], help="tour -> encoding")
    s.add_argument("--tour", required=True, help="comma-separated cities starting at 1")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", parents=[common], help="encoding -> tour")
    s.add_argument("--enc", required=True, help="space-separated marks, or a JSON object")
    s.add_argument("--n", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("validate", parents=[common], help="check a tour and list its peaks")
    s.add_argument("--tour")
    s.add_argument("--enc")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("enumerate", parents=[common], help="all PSB encodings for n cities")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--text", action="store_true", help="one encoding per line")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("adjacency", parents=[common], help="test vertex adjacency of two tours")
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--method", choices=["linear", "exhaustive", "oracle"], default="linear")
    s.set_defaults(func=cmd_adjacency)

    s = sub.add_parser("skeleton", parents=[common], help="1-skeleton of PSB(n)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--format", choices=["dot", "csv", "json", "stats"], default="json")
    s.add_argument("--method", choices=METHODS, default="linear")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--cap", type=int, default=9)
    s.set_defaults(func=cmd_skeleton)

    s = sub.add_parser("solve", parents=[common], help="minimum-cost PSB tour")
    s.add_argument("--costs", required=True, help="cost file (text or JSON)")
    s.add_argument("--method", choices=["dp", "brute"], default="dp")
    s.set_defaults(func=cmd_solve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except WitnessAssemblyFailure as exc:
        print(f"psb: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (PSBError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"psb: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"psb: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
