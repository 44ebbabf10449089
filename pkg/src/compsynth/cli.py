"""Command-line entry point.

Exit codes: 0 solved / yes / validated, 2 a definite negative answer, 1 usage
or input error. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .bench import parse_setting, parse_sweep, plot_records, records_to_csv, run_bench
from .io import (
    parse_graph,
    parse_instance,
    serialize_instance,
    serialize_solution,
    solution_document,
    write_atomic,
)
from .model import ErrorCode, InvalidInputError
from .problems import KINDS, normalize_kind
from .reductions import DSQuery, ds_oracle, reduce, verify_reduction
from .solvers import Strategy, resolve_strategy, search

EXIT_OK, EXIT_ERROR, EXIT_NO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: [usage] {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}", ErrorCode.USAGE) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _cmd_check(args) -> int:
    inst = parse_instance(_read(args.instance))
    print(f"ok {inst.kind}")
    return EXIT_OK


def _cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    strategy = resolve_strategy(inst.kind, args.strategy)
    outcome = search(inst, strategy, workers=args.workers)
    _emit(serialize_solution(solution_document(inst.kind, strategy.value, outcome)), args.out)
    return EXIT_OK if outcome.found else EXIT_NO


def _cmd_ds(args) -> int:
    g = parse_graph(_read(args.graph))
    ds = ds_oracle(DSQuery(g, args.k))
    if ds is None:
        print("none")
        return EXIT_NO
    print(" ".join(f"v{v}" for v in ds))
    return EXIT_OK


def _cmd_reduce(args) -> int:
    red = reduce(args.kind, parse_graph(_read(args.graph)), args.k)
    _emit(serialize_instance(red.instance), args.out)
    for note in red.notes:
        print(f"note: {note}", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    kinds = KINDS if args.kind == "all" else (normalize_kind(args.kind),)
    ok = True
    for kind in kinds:
        if args.strategy is not None:
            resolve_strategy(kind, args.strategy)
        report = verify_reduction(kind, g, args.k, args.strategy)
        print("\n".join(report.lines()))
        ok = ok and report.ok
    return EXIT_OK if ok else EXIT_NO


def _cmd_bench(args) -> int:
    param, values = parse_sweep(args.sweep)
    settings = dict(parse_setting(s) for s in args.set)
    records = run_bench(args.kind, (param, values), args.seed, args.strategy or None, settings)
    write_atomic(args.out, records_to_csv(records))
    if records and not args.no_figure:
        plot_records(records, Path(args.out).with_suffix(".png"))
    print(f"{len(records)} record(s) written to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="compsynth", description="Synthesize and reconfigure two-level selector/procedure systems.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    strategies = [s.value for s in Strategy]

    c = sub.add_parser("check", help="validate an instance document")
    c.add_argument("instance")
    c.set_defaults(run=_cmd_check)

    s = sub.add_parser("solve", help="solve an instance document")
    s.add_argument("instance")
    s.add_argument("--strategy", choices=strategies)
    s.add_argument("--out")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(run=_cmd_solve)

    d = sub.add_parser("ds", help="smallest dominating set of size at most k")
    d.add_argument("graph")
    d.add_argument("k", type=int)
    d.set_defaults(run=_cmd_ds)

    r = sub.add_parser("reduce", help="build the instance a graph and k reduce to")
    r.add_argument("kind", choices=KINDS)
    r.add_argument("graph")
    r.add_argument("k", type=int)
    r.add_argument("--out")
    r.set_defaults(run=_cmd_reduce)

    v = sub.add_parser("verify-reduction", help="check a reduction against the dominating-set oracle")
    v.add_argument("kind", choices=(*KINDS, "all"))
    v.add_argument("graph")
    v.add_argument("k", type=int)
    v.add_argument("--strategy", choices=strategies)
    v.set_defaults(run=_cmd_verify)

    b = sub.add_parser("bench", help="sweep one generator parameter and record search effort")
    b.add_argument("kind", choices=KINDS)
    b.add_argument("--sweep", required=True, help="name=lo..hi, e.g. L_prc=1..4")
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--out", required=True, help="CSV path; a PNG figure is written next to it")
    b.add_argument("--strategy", action="append", choices=strategies, default=[])
    b.add_argument("--set", action="append", default=[], metavar="NAME=VALUE", help="fix another parameter")
    b.add_argument("--no-figure", action="store_true")
    b.set_defaults(run=_cmd_bench)
    return p


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, low in (("k", 0), ("workers", 1)):
        if getattr(args, name, low) < low:
            print(f"compsynth: [usage] {name} must be at least {low}", file=sys.stderr)
            return EXIT_ERROR
    try:
        return args.run(args)
    except InvalidInputError as exc:
        print(f"compsynth: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run_cli())
