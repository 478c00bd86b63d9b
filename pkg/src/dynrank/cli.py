"""``dynrank`` command line: replay, benchmark and generate change logs.

Exit codes: 0 on success, 1 on a parse or usage error, 2 when
``--check-invariants`` detects a breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .changelog import MODES, LogParseError, Options, format_result, open_session, parse_log
from .errors import InvariantError
from .modp import PrimeMode
from .queries import Nfa
from .rank_core import BACKENDS

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("log", type=Path, help="change-log file")
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--primes", choices=[m.value for m in PrimeMode], default=PrimeMode.PRODUCT.value)
    p.add_argument("--prime", type=int, help="matrix mode: track over this single prime")
    p.add_argument("--seed", type=int, default=0, help="matching weights seed")
    p.add_argument("--trials", type=int, default=20, help="matching: independent weight draws")
    p.add_argument("--nfa", type=Path, help="rpq mode: automaton file")
    p.add_argument("--backend", choices=BACKENDS, default=None)
    p.add_argument("--json", action="store_true", help="one JSON record per line")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dynrank", description="Replay, benchmark and generate change logs for the dynamic rank trackers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="replay a log and print query answers")
    _common(run)
    run.add_argument("--check-invariants", action="store_true", help="verify against oracles after every step")

    bench = sub.add_parser("bench", help="time incremental updates against recomputation")
    _common(bench)
    bench.add_argument("--out", type=Path, help="directory for bench.csv and timings.png")
    bench.add_argument("--no-baseline", action="store_true", help="skip the from-scratch recomputation")

    gen = sub.add_parser("gen", help="write a random change log to stdout")
    gen.add_argument("--mode", choices=MODES, required=True)
    gen.add_argument("--size", type=int, required=True, help="matrix dimension or node/variable count")
    gen.add_argument("--steps", type=int, default=100)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--bound", type=int, default=8, help="matrix mode: entry bound N")
    gen.add_argument("--query-every", type=int, default=1)
    return parser


def _options(args) -> Options:
    if args.trials < 1:
        raise LogParseError(0, "--trials must be positive")
    nfa = None
    if args.nfa is not None:
        try:
            nfa = Nfa.parse(args.nfa.read_text(encoding="utf-8"))
        except OSError as exc:
            raise LogParseError(0, f"cannot read NFA: {exc.strerror}") from None
        except ValueError as exc:
            raise LogParseError(0, str(exc)) from None
    return Options(args.primes, args.prime, args.seed, args.trials, nfa, args.backend)


def _load(args):
    try:
        text = args.log.read_text(encoding="utf-8")
    except OSError as exc:
        raise LogParseError(0, f"cannot read {args.log}: {exc.strerror}") from None
    header, ops = parse_log(text)
    return header, ops, _options(args)


def cmd_run(args, out) -> int:
    header, ops, options = _load(args)
    session = open_session(args.mode, header, options)
    if args.check_invariants:
        session.check_invariants()
    for step, op in enumerate(ops, 1):
        result = session.apply(op)
        if args.check_invariants:
            try:
                session.check_invariants()
            except InvariantError as exc:
                raise InvariantError(f"line {op.line}: {exc}") from None
        if op.is_query:
            if args.json:
                out.write(json.dumps({"op": op.op, "step": step, "result": result}) + "\n")
            else:
                out.write(format_result(op, result) + "\n")
    return EXIT_OK


def cmd_bench(args, out) -> int:
    from .bench import run_bench, summarize, write_csv

    header, ops, options = _load(args)
    timings = run_bench(args.mode, header, ops, options, baseline=not args.no_baseline)
    summary = summarize(timings)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        write_csv(timings, args.out / "bench.csv")
        if summary["updates"]:
            from .plotting import plot_timings

            plot_timings(timings, args.out / "timings.png", title=f"{args.mode}: {args.log.name}")
    if args.json:
        out.write(json.dumps(summary) + "\n")
    else:
        for key, val in summary.items():
            if isinstance(val, float):
                val = f"{val:.3e}" if key != "ratio" else f"{val:.2f}"
            out.write(f"{key}\t{val}\n")
    return EXIT_OK


def cmd_gen(args, out) -> int:
    from .generate import random_log

    out.write(random_log(args.mode, args.size, args.steps, args.seed, args.bound, args.query_every))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    handler = {"run": cmd_run, "bench": cmd_bench, "gen": cmd_gen}[args.command]
    try:
        return handler(args, out)
    except LogParseError as exc:
        print(f"dynrank: {args.log if hasattr(args, 'log') else '-'}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"dynrank: invariant breach: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"dynrank: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
