"""
Operator commands.

This module contains the ``eval`` command (one operator applied to an
expression or to sampled CSV data) and the ``word`` command (a composition
of operators applied rightmost-first).
"""

import argparse
import logging
from pathlib import Path
from typing import List, Optional

from app.config import settings
from app.exceptions import DomainError
from app.routes.output import emit_table, emit_text
from app.schemas.liouville import LiouvilleTerm
from app.schemas.power_sum import FracOrder, PowerSum
from app.schemas.sampled import InitialData, SampledFunction
from app.services import liouville, numeric, symbolic
from app.services.exponent_law import apply_word
from app.services.expression import parse, parse_word

logger = logging.getLogger(__name__)

OPERATORS = ("J", "D", "Dc")


def apply_symbolic(op: str, f: PowerSum, order: FracOrder) -> PowerSum:
    """Apply J, D or Dc exactly."""
    if op == "J":
        return symbolic.rl_integral(f, order)
    if op == "D":
        return symbolic.rl_derivative(f, order)
    return symbolic.caputo_derivative(f, order)


def apply_liouville(
    op: str, term: LiouvilleTerm, order: FracOrder, weyl: bool = False
) -> LiouvilleTerm:
    """Apply the -infinity based operator, or the Weyl integral to mirrored terms."""
    if weyl and not term.reflected:
        term = liouville.reflect(term)
    if term.reflected:
        if op != "J":
            raise DomainError("only the Weyl integral acts on mirrored terms")
        return liouville.weyl_integral(term, order)
    if op == "J":
        return liouville.liouville_integral(term, order)
    if op == "D":
        return liouville.liouville_derivative(term, order)
    raise DomainError("the Caputo derivative needs a causal power sum")


def _exact_derivative(f: PowerSum, order: FracOrder, horizon: float, n: int) -> Optional[SampledFunction]:
    try:
        return numeric.sample(symbolic.classical_derivative(f, order.m), horizon, n)
    except DomainError:
        return None


def apply_numeric(
    op: str,
    samples: SampledFunction,
    order: FracOrder,
    init: InitialData,
    mth_deriv: Optional[SampledFunction] = None,
) -> SampledFunction:
    """Apply J, D or Dc to sampled data."""
    if op == "J":
        return numeric.rl_integral_numeric(samples, order)
    if op == "Dc":
        return numeric.caputo_derivative_numeric(samples, order, mth_deriv)
    return numeric.rl_derivative_numeric(samples, order, init, mth_deriv)


def eval_command(args: argparse.Namespace) -> int:
    """
    Apply one operator and print its values.

    With ``--t`` the exact result is evaluated at the given points. Otherwise
    the input is sampled on ``--grid T N`` (or read from ``--csv``) and the
    numeric operator's values are printed at every node.
    """
    order = FracOrder.of(args.alpha)
    if args.csv is not None:
        samples = numeric.from_csv(Path(args.csv).read_text())
        init = InitialData(derivs=tuple(args.init or ()))
        result = apply_numeric(args.op, samples, order, init)
        emit_table(["t", "value"], zip(result.times, result.values), args.format)
        return 0
    if args.expr is None:
        raise DomainError("eval needs --expr or --csv")

    expression = parse(args.expr)
    if isinstance(expression.parsed, LiouvilleTerm):
        term = apply_liouville(args.op, expression.parsed, order, args.weyl)
        if not args.t:
            emit_text(term.render(), args.format)
            return 0
        emit_table(
            ["t", "value"],
            ((t, liouville.evaluate_liouville(term, t)) for t in args.t),
            args.format,
        )
        return 0

    f = expression.parsed
    if args.t:
        result = apply_symbolic(args.op, f, order)
        rows = [(t, symbolic.evaluate(result, t)) for t in args.t]
        if len(rows) == 1 and args.format == "plain":
            emit_table(["value"], [[rows[0][1]]], args.format)
        else:
            emit_table(["t", "value"], rows, args.format)
        return 0
    if args.symbolic:
        emit_text(apply_symbolic(args.op, f, order).render(), args.format)
        return 0

    horizon, n = args.grid if args.grid else (1.0, settings.GRID_POINTS)
    n = int(n)
    samples = numeric.sample(f, horizon, n)
    init = InitialData()
    if args.op == "D":
        init = InitialData(derivs=tuple(symbolic.initial_derivatives(f, order.m)))
    mth = _exact_derivative(f, order, horizon, n) if args.op != "J" and order.m else None
    logger.debug("numeric %s^%s on N=%d, exact derivative: %s", args.op, order, n, mth is not None)
    result = apply_numeric(args.op, samples, order, init, mth)
    emit_table(["t", "value"], zip(result.times, result.values), args.format)
    return 0


def word_command(args: argparse.Namespace) -> int:
    """Apply an operator word and print the result (and each step with --steps)."""
    word = parse_word(args.word)
    expression = parse(args.expr)
    if not isinstance(expression.parsed, PowerSum):
        raise DomainError("operator words act on causal power sums")
    outcome = apply_word(word, expression.parsed)
    if args.t:
        emit_table(
            ["t", "value"],
            ((t, symbolic.evaluate(outcome.result, t)) for t in args.t),
            args.format,
        )
        return 0
    if args.steps:
        labels: List[str] = ["input"] + [step.render() for step in reversed(word.steps)]
        emit_table(
            ["step", "result"],
            ((label, value.render()) for label, value in zip(labels, outcome.intermediates)),
            args.format,
        )
        return 0
    emit_text(outcome.result.render(), args.format)
    return 0


def register(subparsers, common: argparse.ArgumentParser) -> None:
    """
    Add the ``eval`` and ``word`` commands.

    Args:
        subparsers: Sub-command collection of the root parser
        common: Parent parser with the shared output flags
    """
    parser = subparsers.add_parser(
        "eval", parents=[common], help="apply one operator and print its values"
    )
    parser.add_argument("--op", choices=OPERATORS, required=True, help="J, D (RL) or Dc (Caputo)")
    parser.add_argument("--alpha", type=float, required=True, help="operator order >= 0")
    parser.add_argument("--expr", help="input expression, e.g. '2*t^0.5 + 1'")
    parser.add_argument("--csv", help="sampled input with header t,value")
    parser.add_argument("--t", type=float, nargs="+", help="evaluation points")
    parser.add_argument(
        "--grid", type=float, nargs=2, metavar=("T", "N"), help="uniform grid for numeric evaluation"
    )
    parser.add_argument("--init", type=float, nargs="*", help="f^(k)(0+) for sampled RL input")
    parser.add_argument("--symbolic", action="store_true", help="print the exact result expression")
    parser.add_argument("--weyl", action="store_true", help="treat abs(t)^-d as t'^-d, t' > 0")
    parser.set_defaults(handler=eval_command)

    parser = subparsers.add_parser(
        "word", parents=[common], help="apply a composition of operators, rightmost first"
    )
    parser.add_argument("--word", required=True, help="steps such as 'D:0.5,D:1.5'")
    parser.add_argument("--expr", required=True, help="input expression")
    parser.add_argument("--t", type=float, nargs="+", help="evaluation points")
    parser.add_argument("--steps", action="store_true", help="print every intermediate result")
    parser.set_defaults(handler=word_command)
