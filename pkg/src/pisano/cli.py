"""
Command-line interface.

Usage:
    pisano period --modulus 11                      # Fibonacci period mod 11
    pisano bound --prime 19 --a 3 --b 1             # theorem bound for a prime
    pisano verify --max-prime 10000                 # exit 1 on any violation
    pisano table --max-prime 100 --format csv       # tightness survey
    pisano sequence --modulus 37 --a 3 --b 2 --count 20

A and B default to 1 (Fibonacci) and may be negative.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Sequence

from .errors import InvalidModulus, NotPurelyPeriodic
from .modular import is_prime
from .recurrence import PeriodReport, RecurrenceSpec, analyze, sequence_slice
from .theorems import bound_for_prime, tightness_survey, verify_range

__all__ = ["main", "run"]

REPORT_COLUMNS = [
    "A", "B", "m", "delta", "period", "classification", "bound", "theorem",
    "divides_bound", "tight", "naive", "matrix_order", "eigenvalue", "composite",
]


def _report_row(report: PeriodReport) -> dict[str, Any]:
    d = report.to_dict()
    row = {**d["spec"]}
    for key in ("period", "classification", "bound", "theorem", "divides_bound", "tight"):
        row[key] = d[key]
    for method in ("naive", "matrix_order", "eigenvalue", "composite"):
        row[method] = d["method_agreement"].get(method)
    return row


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _format_table(rows: list[dict[str, Any]], columns: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])
        return buf.getvalue()
    cells = [columns] + [[_cell(row.get(c)) or "-" for c in columns] for row in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(columns))]
    return "".join("  ".join(v.rjust(w) for v, w in zip(line, widths)).rstrip() + "\n" for line in cells)


def _format_single(obj: dict[str, Any], flat: dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2) + "\n"
    if fmt == "csv":
        return _format_table([flat], list(flat), "csv")
    return "".join(f"{k}={_cell(v) or '-'}\n" for k, v in flat.items())


def _cmd_period(args: argparse.Namespace) -> tuple[str, int]:
    report = analyze(RecurrenceSpec(args.a, args.b, args.modulus))
    row = {k: v for k, v in _report_row(report).items() if v is not None or k in ("bound", "theorem")}
    return _format_single(report.to_dict(), row, args.format), 0


def _cmd_bound(args: argparse.Namespace) -> tuple[str, int]:
    if not is_prime(args.prime):
        raise argparse.ArgumentTypeError(f"--prime {args.prime} is not prime")
    result = bound_for_prime(args.a, args.b, args.prime)
    return _format_single(result.to_dict(), result.to_dict(), args.format), 0


def _cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    reports = verify_range(args.a, args.b, args.max_prime, naive=args.naive, workers=args.workers)
    bad = [r for r in reports if r.violation]
    checked = sum(r.bound is not None for r in reports)
    print(f"checked {checked} primes with a bound, {len(bad)} violations", file=sys.stderr)
    if args.format == "json":
        text = json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    else:
        text = _format_table([_report_row(r) for r in reports], REPORT_COLUMNS, args.format)
    return text, 1 if bad else 0


def _cmd_table(args: argparse.Namespace) -> tuple[str, int]:
    survey = tightness_survey(args.a, args.b, args.max_prime, workers=args.workers)
    rows = [r.to_dict() for r in survey.rows]
    text = _format_table(rows, ["p", "period", "bound", "tight"], args.format)
    summary = (
        f"tight {survey.tight_count}/{len(survey.rows)}"
        f" ({survey.tight_fraction:.3f}); non-tight: {' '.join(map(str, survey.non_tight)) or 'none'}"
    )
    if args.format == "text":
        text += summary + "\n"
    else:
        print(summary, file=sys.stderr)
    return text, 0


def _cmd_sequence(args: argparse.Namespace) -> tuple[str, int]:
    spec = RecurrenceSpec(args.a, args.b, args.modulus)
    values = sequence_slice(spec, args.count)
    if args.format == "json":
        return json.dumps({"spec": spec.to_dict(), "values": values}, indent=2) + "\n", 0
    if args.format == "csv":
        return _format_table([{"n": i, "value": v} for i, v in enumerate(values)], ["n", "value"], "csv"), 0
    return ", ".join(map(str, values)) + "\n", 0


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _modulus(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"modulus must be >= 2, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=int, default=1, help="coefficient A (default 1)")
    common.add_argument("--b", type=int, default=1, help="coefficient B (default 1)")
    common.add_argument("--format", choices=["text", "csv", "json"], default="text")

    parser = argparse.ArgumentParser(
        prog="pisano", description="Periods of E(n+1) = A*E(n) + B*E(n-1) modulo m."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("period", parents=[common], help="period modulo m, by every applicable method")
    p.add_argument("--modulus", "-m", type=_modulus, required=True)
    p.set_defaults(func=_cmd_period)

    p = sub.add_parser("bound", parents=[common], help="theorem bound for a prime")
    p.add_argument("--prime", "-p", type=_modulus, required=True)
    p.set_defaults(func=_cmd_bound)

    for name, func, help_text in (
        ("verify", _cmd_verify, "check period | bound for all odd primes up to --max-prime"),
        ("table", _cmd_table, "tightness survey over odd primes up to --max-prime"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--max-prime", type=_modulus, required=True)
        p.add_argument("--workers", type=_positive, default=1, help="worker processes (default 1)")
        if name == "verify":
            p.add_argument("--naive", action="store_true", help="also cross-check by direct iteration")
        p.set_defaults(func=func)

    p = sub.add_parser("sequence", parents=[common], help="print E_0 .. E_{count-1}")
    p.add_argument("--modulus", "-m", type=_modulus, required=True)
    p.add_argument("--count", "-n", type=_positive, default=20)
    p.set_defaults(func=_cmd_sequence)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_prime", 3) < 3:
        parser.error("--max-prime must be >= 3")
    try:
        text, code = args.func(args)
    except (InvalidModulus, NotPurelyPeriodic, argparse.ArgumentTypeError) as exc:
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n")
    sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
