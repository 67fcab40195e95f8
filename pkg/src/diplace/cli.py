"""Command-line entry point.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or input
errors.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Sequence

from diplace import bounds, days, digraphs, games, notation, placement, search

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _default_workers() -> int:
    return os.cpu_count() or 1


def _probability(text: str) -> float:
    p = float(text)
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError("probability must lie in [0, 1]")
    return p


def _non_negative(text: str) -> int:
    k = int(text)
    if k < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return k


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diplace", description="Digraph placement game values and searches.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="value of every digraph in a digraph6 file")
    p.add_argument("file", help="digraph6 file, one graph per line")

    p = sub.add_parser("outcome", help="outcome class of a game given in notation")
    p.add_argument("game", help='e.g. "{0|*}" or "^*"')

    p = sub.add_parser("enumerate", help="all values born by a given day")
    p.add_argument("--day", type=int, required=True, choices=range(days.MAX_DAY + 1))
    p.add_argument("--out", help="write values here instead of stdout")

    def add_workers(q: argparse.ArgumentParser) -> None:
        q.add_argument("--workers", type=int, default=_default_workers(), help="worker processes (default: CPU count)")

    p = sub.add_parser("census", help="evaluate every digraph class up to a vertex count")
    p.add_argument("--max-vertices", type=int, required=True, choices=range(digraphs.MAX_GEN_VERTICES + 1))
    p.add_argument("--out-graphs", help="witness digraph6 file")
    p.add_argument("--out-values", help="value file, same order as --out-graphs")
    p.add_argument("--checkpoint", help="resumable cursor file (resumed if it exists)")
    add_workers(p)

    p = sub.add_parser("search-random", help="search random digraphs for target values")
    p.add_argument("--n", type=int, required=True, help="vertices per graph")
    p.add_argument("--p", type=_probability, required=True, help="arc probability")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=_non_negative, required=True, help="graphs to evaluate")
    p.add_argument("--targets", choices=search.TARGET_NAMES, default="day3-missing-19")
    p.add_argument("--out-graphs", help="witness digraph6 file for covered targets")
    p.add_argument("--out-values", help="value file for covered targets")
    add_workers(p)

    p = sub.add_parser("search-colour-iso", help="search the colour-isomorphic 8-vertex digraphs")
    p.add_argument("--targets", choices=search.TARGET_NAMES, default="Z")
    p.add_argument("--resume", metavar="CURSOR", help="checkpoint file; resumed if it exists, updated as shards finish")
    p.add_argument("--max-shards", type=_non_negative, help="stop after this many shards of 65536 graphs")
    p.add_argument("--out-graphs", help="witness digraph6 file for covered targets")
    p.add_argument("--out-values", help="value file for covered targets")
    add_workers(p)

    p = sub.add_parser("verify", help="check a digraph6 file against a value file")
    p.add_argument("graphs")
    p.add_argument("values")

    p = sub.add_parser("bounds", help="bounds on F(4) and F(5)")
    p.add_argument("--day", type=int, choices=(4, 5))
    p.add_argument("--table-dn", type=int, metavar="N", help="also print D(n) for n <= N")
    return parser


def _print_summary(summary: dict[str, object]) -> None:
    print(search.format_summary(summary))


def _write_covered(report: search.SearchReport, graphs: str | None, values: str | None) -> None:
    if graphs is None or values is None:
        return
    with open(graphs, "w", encoding="utf-8") as fg, open(values, "w", encoding="utf-8") as fv:
        for x, _, line in report.covered:
            fg.write(line + "\n")
            fv.write(notation.format_game(x) + "\n")


def _cmd_eval(args: argparse.Namespace) -> int:
    with open(args.file, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    for i, line in enumerate(lines, start=1):
        try:
            g = digraphs.parse_digraph6(line)
        except ValueError as e:
            print(f"{args.file}:{i}: {e}", file=sys.stderr)
            return EXIT_USAGE
        print(notation.format_game(placement.evaluate(g)))
    return EXIT_OK


def _cmd_outcome(args: argparse.Namespace) -> int:
    try:
        x = notation.parse_value(args.game)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    o = games.outcome(x)
    print(f"{o.value} ({o.describe()})")
    return EXIT_OK


def _cmd_enumerate(args: argparse.Namespace) -> int:
    values = days.enumerate_day(args.day)
    text = "".join(notation.format_game(x) + "\n" for x in values)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _print_summary({"day": args.day, "values": len(values)})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_census(args: argparse.Namespace) -> int:
    report = search.census_run(
        args.max_vertices,
        args.out_graphs,
        args.out_values,
        workers=args.workers,
        checkpoint=args.checkpoint,
        resume=args.checkpoint is not None,
    )
    _print_summary(report.summary())
    return EXIT_OK


def _cmd_search_random(args: argparse.Namespace) -> int:
    report = search.random_search(
        args.n, args.p, args.seed, args.count, search.target_list(args.targets), workers=args.workers
    )
    for line in report.lines():
        print(line)
    _write_covered(report, args.out_graphs, args.out_values)
    _print_summary(report.summary())
    return EXIT_OK


def _cmd_search_colour_iso(args: argparse.Namespace) -> int:
    report = search.colour_iso_search(
        search.target_list(args.targets),
        workers=args.workers,
        checkpoint=args.resume,
        resume=args.resume is not None,
        max_shards=args.max_shards,
    )
    for line in report.lines():
        print(line)
    _write_covered(report, args.out_graphs, args.out_values)
    _print_summary(report.summary())
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        report = search.verify(args.graphs, args.values)
    except search.VerifyInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    for c in report.failures:
        print(f"line {c.line}: FAIL {c.message}")
    _print_summary(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_bounds(args: argparse.Namespace) -> int:
    print(bounds.bounds_report(day=args.day, table_dn=args.table_dn))
    return EXIT_OK


COMMANDS = {
    "eval": _cmd_eval,
    "outcome": _cmd_outcome,
    "enumerate": _cmd_enumerate,
    "census": _cmd_census,
    "search-random": _cmd_search_random,
    "search-colour-iso": _cmd_search_colour_iso,
    "verify": _cmd_verify,
    "bounds": _cmd_bounds,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
