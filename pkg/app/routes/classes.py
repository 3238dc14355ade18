"""
Classification command.

This module contains the ``classify`` command, which names the integrability
class (Riemann, Liouville or Neither) of each term of an expression.
"""

import argparse

from app.routes.output import emit_table, emit_text
from app.schemas.power_sum import FracOrder, PowerSum
from app.services.expression import parse
from app.services.liouville import classify


def classify_command(args: argparse.Namespace) -> int:
    """Print the class of the expression, or of every term with --terms."""
    expression = parse(args.expr)
    order = FracOrder.of(args.alpha)
    parsed = expression.parsed
    if args.terms and isinstance(parsed, PowerSum):
        emit_table(
            ["term", "class"],
            ((term.render(), classify(term, order).value) for term in parsed.terms),
            args.format,
        )
        return 0
    emit_text(classify(parsed, order).value, args.format, name="class")
    return 0


def register(subparsers, common: argparse.ArgumentParser) -> None:
    """Add the ``classify`` command."""
    parser = subparsers.add_parser(
        "classify", parents=[common], help="Riemann, Liouville or Neither"
    )
    parser.add_argument("--expr", required=True, help="input expression")
    parser.add_argument("--alpha", type=float, default=0.5, help="operator order")
    parser.add_argument("--terms", action="store_true", help="classify term by term")
    parser.set_defaults(handler=classify_command)
