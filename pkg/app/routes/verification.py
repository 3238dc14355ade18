"""
Verification commands.

This module contains the ``verify`` command, which runs the identity suites,
and the ``table`` command, which prints the worked examples. Both exit with 1
when a check fails.
"""

import argparse
import json

from app.routes.output import emit_table, emit_text, format_number
from app.services.verification import SUITES, VerificationService, worked_examples


def verify_command(args: argparse.Namespace) -> int:
    """Run one suite or all of them and print a summary line per suite."""
    service = VerificationService(cases=args.cases, seed=args.seed)
    reports = service.run(args.suite)
    if args.format == "json":
        print(json.dumps(
            [report.model_dump() | {"ok": report.ok} for report in reports], default=str
        ))
    else:
        emit_table(
            ["suite", "cases", "failures", "skipped", "status"],
            (
                (r.suite, r.cases, r.failures, r.skipped, "ok" if r.ok else "FAILED")
                for r in reports
            ),
            "csv" if args.format == "csv" else "plain",
        )
        if args.format == "plain":
            for report in reports:
                for check in report.checks:
                    if not check.ok or args.details:
                        print(f"  {report.suite}: {check.name}: "
                              f"{'ok' if check.ok else 'FAILED'} {check.detail or ''}".rstrip())
    return 0 if all(report.ok for report in reports) else 1


def table_command(args: argparse.Namespace) -> int:
    """Print the worked-example table."""
    rows = worked_examples()
    if args.format == "plain":
        lines = [
            f"{r.label}: {r.result} (expected {r.expected}, error {format_number(r.error)})"
            f" {'ok' if r.ok else 'FAIL'}"
            for r in rows
        ]
        emit_text("\n".join(lines), args.format, name="table")
    else:
        emit_table(
            ["example", "result", "expected", "error", "ok"],
            ((r.label, r.result, r.expected, r.error, r.ok) for r in rows),
            args.format,
        )
    return 0 if all(row.ok for row in rows) else 1


def register(subparsers, common: argparse.ArgumentParser) -> None:
    """Add the ``verify`` and ``table`` commands."""
    parser = subparsers.add_parser("verify", parents=[common], help="run identity suites")
    parser.add_argument("--suite", choices=SUITES + ("all",), default="all", help="suite to run")
    parser.add_argument("--cases", type=int, help="case count of the large randomized suites")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument("--details", action="store_true", help="also list passing checks")
    parser.set_defaults(handler=verify_command)

    parser = subparsers.add_parser("table", parents=[common], help="print the worked examples")
    parser.set_defaults(handler=table_command)
