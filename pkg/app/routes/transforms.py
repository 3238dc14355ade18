"""
Laplace commands.

This module contains the ``laplace`` command: the image of an expression, or
of an operator applied to it through the operational rules, with an optional
numeric cross-check on the real axis.
"""

import argparse

from app.exceptions import DomainError
from app.routes.output import emit_table, emit_text
from app.schemas.power_sum import FracOrder, PowerSum
from app.schemas.sampled import InitialData
from app.services import laplace, symbolic
from app.services.expression import parse
from app.routes.operators import apply_symbolic


def laplace_command(args: argparse.Namespace) -> int:
    """Print the image; with ``--s`` print the symbolic-versus-numeric table."""
    expression = parse(args.expr)
    f = expression.parsed
    if not isinstance(f, PowerSum):
        raise DomainError("Laplace images are defined for causal power sums")

    image = laplace.transform(f)
    target = f
    if args.op is not None:
        if args.alpha is None:
            raise DomainError("--op needs --alpha")
        order = FracOrder.of(args.alpha)
        target = apply_symbolic(args.op, f, order)
        if args.op == "J":
            image = laplace.rule_j(order, image)
        elif args.op == "Dc":
            init = InitialData(derivs=tuple(symbolic.initial_derivatives(f, order.m)))
            image = laplace.rule_caputo(order, image, init)
        else:
            image = laplace.rule_rl(order, image, laplace.rl_initial_values(f, order))

    if not args.s:
        emit_text(image.render(), args.format)
        return 0
    rows = laplace.cross_check(target, args.s, tol=args.tol, image=image)
    if args.format == "csv":
        print(laplace.to_csv(rows), end="")
        return 0
    emit_table(
        ["s", "symbolic", "numeric", "abs_diff"],
        ((r.s, r.symbolic, r.numeric, r.abs_diff) for r in rows),
        args.format,
    )
    return 0


def register(subparsers, common: argparse.ArgumentParser) -> None:
    """Add the ``laplace`` command."""
    parser = subparsers.add_parser(
        "laplace", parents=[common], help="Laplace image and numeric cross-check"
    )
    parser.add_argument("--expr", required=True, help="input expression")
    parser.add_argument("--op", choices=("J", "D", "Dc"), help="apply an operational rule")
    parser.add_argument("--alpha", type=float, help="order of --op")
    parser.add_argument("--s", type=float, nargs="+", help="real points s > 0 to cross-check")
    parser.add_argument("--tol", type=float, default=1e-10, help="oracle tolerance")
    parser.set_defaults(handler=laplace_command)
