"""Command line interface.

    ddecide solve FILE --delta D [--mode M] [--tolerance-bits K]
                       [--budget N] [--trace FILE] [--json]
    ddecide qbf FILE --delta D [same options] [--dump-sentence]
    ddecide check FILE

Exit codes: 0 for an affirmative outcome, 1 for a negative one, 2 when
the budget ran out (Unknown), 3 for bad input (including a partial
function applied outside its domain).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .decide import (
    AFFIRMATIVE,
    NEGATIVE,
    Verdict,
    decide_robust,
    decide_strengthen,
    decide_weaken,
)
from .errors import DdecideError
from .formulas import check_well_formed
from .optimizer import Status
from .parser import parse_sentence
from .printer import format_sentence
from .qbf import encode, parse_qdimacs

EXIT_AFFIRMATIVE = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_INPUT = 3

_DECIDERS = {
    "strengthen": decide_strengthen,
    "weaken": decide_weaken,
    "robust": decide_robust,
}


class _InputError(Exception):
    pass


def _build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ddecide", description="delta-decide bounded sentences over the reals"
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_solver_options(p):
        p.add_argument("file", help="input file, or - for stdin")
        p.add_argument("--delta", required=True, help="positive rational, e.g. 1/4")
        p.add_argument(
            "--mode",
            choices=sorted(_DECIDERS),
            default="strengthen",
            help="which side of the decision to take (default: strengthen)",
        )
        p.add_argument(
            "--tolerance-bits",
            type=int,
            metavar="K",
            help="override the evaluation tolerance 2**-K derived from delta",
        )
        p.add_argument(
            "--budget",
            type=int,
            default=1_000_000,
            metavar="N",
            help="interval splits allowed per bound operator (default: 1000000)",
        )
        p.add_argument(
            "--trace", metavar="FILE", help="write optimizer progress records, one JSON object per line"
        )
        p.add_argument("--json", action="store_true", help="print the verdict as JSON")

    solve = sub.add_parser("solve", help="decide a sentence")
    add_solver_options(solve)

    qbf = sub.add_parser("qbf", help="decide a QDIMACS instance via its real encoding")
    add_solver_options(qbf)
    qbf.add_argument(
        "--dump-sentence",
        action="store_true",
        help="print the encoded sentence instead of solving it",
    )

    check = sub.add_parser("check", help="parse and validate a sentence")
    check.add_argument("file", help="input file, or - for stdin")
    return top


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None


def _parse_delta(text: str) -> Fraction:
    try:
        delta = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise _InputError(f"bad delta {text!r}: expected a rational like 1/4") from None
    if delta <= 0:
        raise _InputError(f"bad delta {text!r}: must be positive")
    return delta


def _run_decider(phi, args) -> int:
    delta = _parse_delta(args.delta)
    if args.budget <= 0:
        raise _InputError("--budget must be positive")
    if args.tolerance_bits is not None and args.tolerance_bits <= 0:
        raise _InputError("--tolerance-bits must be positive")
    decider = _DECIDERS[args.mode]
    trace_file = open(args.trace, "w", encoding="utf-8") if args.trace else None
    try:
        trace = None
        if trace_file is not None:
            trace = lambda record: print(json.dumps(record), file=trace_file)
        verdict = decider(
            phi,
            delta,
            tolerance_bits=args.tolerance_bits,
            max_splits=args.budget,
            trace=trace,
        )
    finally:
        if trace_file is not None:
            trace_file.close()
    return _report(verdict, args.json)


def _report(verdict: Verdict, as_json: bool) -> int:
    if verdict.status is Status.DOMAIN_VIOLATION:
        detail = verdict.violation or "partial function outside its domain"
        print(f"error: {detail}", file=sys.stderr)
        if as_json:
            print(json.dumps(verdict.to_json_dict()))
        return EXIT_INPUT
    if as_json:
        print(json.dumps(verdict.to_json_dict()))
    else:
        print(verdict.outcome.value)
    if verdict.outcome in AFFIRMATIVE:
        return EXIT_AFFIRMATIVE
    if verdict.outcome in NEGATIVE:
        return EXIT_NEGATIVE
    print("budget exhausted before the enclosure converged", file=sys.stderr)
    return EXIT_UNKNOWN


def _cmd_solve(args) -> int:
    phi = parse_sentence(_read_input(args.file))
    problem = check_well_formed(phi)
    if problem is not None:
        raise _InputError(problem)
    return _run_decider(phi, args)


def _cmd_qbf(args) -> int:
    phi = encode(parse_qdimacs(_read_input(args.file)))
    if args.dump_sentence:
        print(format_sentence(phi))
        return EXIT_AFFIRMATIVE
    return _run_decider(phi, args)


def _cmd_check(args) -> int:
    phi = parse_sentence(_read_input(args.file))
    problem = check_well_formed(phi)
    if problem is not None:
        raise _InputError(problem)
    print("ok")
    return EXIT_AFFIRMATIVE


_COMMANDS = {"solve": _cmd_solve, "qbf": _cmd_qbf, "check": _cmd_check}


def main(argv=None) -> int:
    args = _build_arg_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (_InputError, DdecideError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
