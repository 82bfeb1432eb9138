"""Command-line interface: synthesize, check, monitor, separable.

Exit codes: 0 success (synthesize: formula found; check: globally
separating; separable: yes), 2 negative verdict (no solution / not
separating / not separable), 3 synthesis aborted, 1 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .formulas import FormulaError, future_reach, parse_formula, print_formula
from .monitoring import globally_separates, satisfaction_intervals
from .rationals import format_rational, parse_rational
from .separability import is_infix_separable
from .signals import SignalError, load_sample
from .solver import SolverError, resolve_solver
from .synthesis import synthesize


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--sample", required=True, help="sample JSON file")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument(
        "--decimal", action="store_true", help="print rationals in fixed point"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mtlsynth",
        description="Learn and monitor bounded-lookahead MTL formulas on signal prefixes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_syn = sub.add_parser("synthesize", help="learn a minimal separating formula")
    _add_common(p_syn)
    p_syn.add_argument("--fr-bound", required=True, help="lookahead budget (rational)")
    p_syn.add_argument("--max-size", type=int, default=6)
    p_syn.add_argument("--margin", type=int, default=2, help="extra interval slots per node")
    p_syn.add_argument("--solver", help="external SMT solver command (default: autodetect)")
    p_syn.add_argument("--timeout", type=float, help="per-query solver timeout (seconds)")
    p_syn.add_argument("--dump-smt", metavar="DIR", help="write each SMT query to DIR")

    p_chk = sub.add_parser("check", help="check a formula globally separates a sample")
    _add_common(p_chk)
    p_chk.add_argument("--formula", required=True)

    p_mon = sub.add_parser("monitor", help="print satisfaction intervals per prefix")
    _add_common(p_mon)
    p_mon.add_argument("--formula", required=True)
    p_mon.add_argument("--prefix-index", type=int, help="restrict to one prefix (0-based)")

    p_sep = sub.add_parser("separable", help="test infix-separability at a lookahead bound")
    _add_common(p_sep)
    p_sep.add_argument("--fr-bound", required=True)
    return parser


def _format_intervals(intervals, decimal: bool) -> str:
    body = ",".join(
        f"[{format_rational(l, decimal)},{format_rational(r, decimal)})"
        for l, r in intervals.spans
    )
    return "{" + body + "}"


def _cmd_synthesize(args) -> int:
    sample = load_sample(args.sample)
    bound = parse_rational(args.fr_bound)
    config = resolve_solver(args.solver)
    config.timeout = args.timeout
    if args.dump_smt:
        config.dump_dir = Path(args.dump_smt)
    result = synthesize(
        sample, bound, max_size=args.max_size, solver=config, margin=args.margin
    )
    if args.json:
        print(json.dumps(result.to_dict(), indent=2))
    elif result.status == "found":
        print(f"formula: {print_formula(result.formula)}")
        print(f"size: {result.size}")
        print(f"future-reach: {format_rational(result.reach, args.decimal)}")
        for attempt in result.attempts:
            print(
                f"  size {attempt.size}: {attempt.status} in {attempt.seconds:.2f}s "
                f"({attempt.atoms} atoms)"
            )
    else:
        print(f"{result.status}: {result.reason}")
    return {"found": 0, "no_solution": 2, "aborted": 3}[result.status]


def _cmd_check(args) -> int:
    sample = load_sample(args.sample)
    formula = parse_formula(args.formula)
    verdict = globally_separates(formula, sample)
    if args.json:
        payload = {
            "schema": 1,
            "separates": verdict.separates,
            "positive": [i.is_full() for i in verdict.per_positive],
            "negative": [not i.is_full() for i in verdict.per_negative],
        }
        if verdict.witness is not None:
            payload["witness"] = {
                "label": verdict.witness.label,
                "index": verdict.witness.index,
                "time": None
                if verdict.witness.time is None
                else format_rational(verdict.witness.time),
            }
        print(json.dumps(payload, indent=2))
    else:
        for idx, intervals in enumerate(verdict.per_positive):
            if intervals.is_full():
                print(f"positive[{idx}]: ok")
            else:
                t = intervals.complement().spans[0][0]
                print(f"positive[{idx}]: FAIL at t={format_rational(t, args.decimal)}")
        for idx, intervals in enumerate(verdict.per_negative):
            if intervals.is_full():
                print(f"negative[{idx}]: FAIL (formula holds at every time point)")
            else:
                t = intervals.complement().spans[0][0]
                print(f"negative[{idx}]: ok (fails at t={format_rational(t, args.decimal)})")
        print("globally separating" if verdict.separates else "not globally separating")
    return 0 if verdict.separates else 2


def _cmd_monitor(args) -> int:
    sample = load_sample(args.sample)
    formula = parse_formula(args.formula)
    prefixes = list(enumerate(sample.prefixes))
    if args.prefix_index is not None:
        if not 0 <= args.prefix_index < len(prefixes):
            raise SignalError(f"prefix index {args.prefix_index} out of range")
        prefixes = [prefixes[args.prefix_index]]
    rows = []
    for idx, prefix in prefixes:
        label = "positive" if idx < len(sample.positive) else "negative"
        rel = idx if label == "positive" else idx - len(sample.positive)
        intervals = satisfaction_intervals(formula, prefix)
        rows.append((label, rel, intervals))
    if args.json:
        print(
            json.dumps(
                {
                    "schema": 1,
                    "formula": print_formula(formula),
                    "intervals": [
                        {
                            "label": label,
                            "index": rel,
                            "intervals": [
                                [format_rational(l), format_rational(r)]
                                for l, r in intervals.spans
                            ],
                        }
                        for label, rel, intervals in rows
                    ],
                },
                indent=2,
            )
        )
    else:
        for label, rel, intervals in rows:
            print(f"{label}[{rel}]: {_format_intervals(intervals, args.decimal)}")
    return 0


def _cmd_separable(args) -> int:
    sample = load_sample(args.sample)
    bound = parse_rational(args.fr_bound)
    result = is_infix_separable(sample, bound)
    if args.json:
        print(
            json.dumps(
                {
                    "schema": 1,
                    "separable": result.separable,
                    "witnesses": [
                        {
                            "negative": w.negative_index,
                            "window": [
                                format_rational(w.start),
                                format_rational(w.end),
                            ],
                        }
                        for w in result.witnesses
                    ],
                    "failing_negative": result.failing_negative,
                },
                indent=2,
            )
        )
    elif result.separable:
        print("separable: yes")
        for w in result.witnesses:
            print(
                f"  negative[{w.negative_index}]: window "
                f"[{format_rational(w.start, args.decimal)},"
                f"{format_rational(w.end, args.decimal)}] matches no positive"
            )
    else:
        print("separable: no")
        print(
            f"  negative[{result.failing_negative}]: every window within the bound "
            "also occurs in a positive prefix"
        )
    return 0 if result.separable else 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "synthesize": _cmd_synthesize,
        "check": _cmd_check,
        "monitor": _cmd_monitor,
        "separable": _cmd_separable,
    }
    try:
        return handlers[args.command](args)
    except (SignalError, FormulaError, SolverError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
