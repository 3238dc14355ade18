"""
Exponent-law service.

This module composes fractional operators into words and applies them
strictly rightmost-first, checks the three validity cases of the law of
exponents on t^lambda times a polynomial, and solves the sequential problems
D^a D^b u = f, D^b D^a v = f and D w = f (a + b = 1) up to their free
constants.
"""

import logging
from typing import List, Sequence, Tuple

from app.exceptions import FracOpsError, PreconditionError
from app.schemas.exponent_law import (
    OperatorKind,
    OperatorStep,
    OperatorWord,
    ProblemVariant,
    SequentialProblem,
    WordResult,
)
from app.schemas.power_sum import FracOrder, PowerSum
from app.services import symbolic

logger = logging.getLogger(__name__)


def apply_step(step: OperatorStep, f: PowerSum) -> PowerSum:
    """Apply a single operator to a power sum."""
    if step.kind is OperatorKind.J:
        return symbolic.rl_integral(f, step.order)
    if step.kind is OperatorKind.D_RL:
        return symbolic.rl_derivative(f, step.order)
    return symbolic.caputo_derivative(f, step.order)


def apply_word(word: OperatorWord, f: PowerSum) -> WordResult:
    """
    Apply an operator word rightmost-first, keeping every intermediate.

    Args:
        word: Steps in written order
        f: Input power sum

    Returns:
        WordResult: Final result and the input followed by each step's result

    Raises:
        FracOpsError: The failing step's error, same class, with its index
            (position in written order) in the message and details
    """
    current = f
    intermediates = [f]
    for index in reversed(range(len(word.steps))):
        step = word.steps[index]
        try:
            current = apply_step(step, current)
        except FracOpsError as exc:
            raise exc.with_context(f"step {index} ({step.render()})", step=index) from exc
        intermediates.append(current)
    return WordResult(result=current, intermediates=intermediates)


def eta_power_sum(lam: float, eta_coeffs: Sequence[float]) -> PowerSum:
    """Build t^lambda * sum_k eta_k t^k."""
    return PowerSum.from_pairs((float(a), lam + k) for k, a in enumerate(eta_coeffs))


def theorem3_sides(
    lam: float, eta_coeffs: Sequence[float], mu: float, nu: float, case: int
) -> Tuple[PowerSum, PowerSum]:
    """
    Both sides of one validity case of the law of exponents.

    Case 1 (mu >= 0, 0 <= nu <= mu): D^nu J^mu f = J^(mu-nu) f.
    Case 2 (mu >= 0, nu > mu):       D^nu J^mu f = D^(nu-mu) f.
    Case 3 (0 <= mu < lambda+1, nu >= 0): D^nu D^mu f = D^(mu+nu) f.

    Args:
        lam: Leading power lambda, > -1
        eta_coeffs: Polynomial coefficients of eta
        mu: First order
        nu: Second order
        case: 1, 2 or 3

    Returns:
        Tuple[PowerSum, PowerSum]: (lhs, rhs)

    Raises:
        PreconditionError: If lambda <= -1 or the case hypothesis fails
    """
    if not lam > -1.0:
        raise PreconditionError("lambda must exceed -1", {"lambda": lam})
    if case == 1:
        holds = mu >= 0.0 and 0.0 <= nu <= mu
    elif case == 2:
        holds = mu >= 0.0 and nu > mu
    elif case == 3:
        holds = 0.0 <= mu < lam + 1.0 and nu >= 0.0
    else:
        raise PreconditionError("case must be 1, 2 or 3", {"case": case})
    if not holds:
        raise PreconditionError(
            f"hypothesis of case {case} fails", {"lambda": lam, "mu": mu, "nu": nu}
        )

    f = eta_power_sum(lam, eta_coeffs)
    if case == 3:
        inner = symbolic.rl_derivative(f, FracOrder.of(mu))
        lhs = symbolic.rl_derivative(inner, FracOrder.of(nu))
        rhs = symbolic.rl_derivative(f, FracOrder.of(mu + nu))
        return lhs, rhs
    lhs = symbolic.rl_derivative(symbolic.rl_integral(f, FracOrder.of(mu)), FracOrder.of(nu))
    if case == 1:
        rhs = symbolic.rl_integral(f, FracOrder.of(mu - nu))
    else:
        rhs = symbolic.rl_derivative(f, FracOrder.of(nu - mu))
    return lhs, rhs


def check_theorem3(
    lam: float, eta_coeffs: Sequence[float], mu: float, nu: float, case: int
) -> bool:
    """Whether both sides of the chosen validity case agree (see theorem3_sides)."""
    lhs, rhs = theorem3_sides(lam, eta_coeffs, mu, nu, case)
    return symbolic.is_close(lhs, rhs)


def sequential_word(problem: SequentialProblem) -> OperatorWord:
    """Operator word of a sequential problem."""
    if problem.variant is ProblemVariant.A:
        return OperatorWord.of(("D", problem.alpha), ("D", problem.beta))
    if problem.variant is ProblemVariant.B:
        return OperatorWord.of(("D", problem.beta), ("D", problem.alpha))
    return OperatorWord.of(("D", 1.0))


def solution_space_basis(problem: SequentialProblem) -> List[PowerSum]:
    """
    Basis of the homogeneous solutions of a sequential problem.

    (A): {1, t^(beta-1)}, (B): {1, t^(alpha-1)}, (C): {1}.
    """
    basis = [PowerSum.constant(1.0)]
    if problem.variant is ProblemVariant.A:
        basis.append(PowerSum.monomial(problem.beta - 1.0))
    elif problem.variant is ProblemVariant.B:
        basis.append(PowerSum.monomial(problem.alpha - 1.0))
    return basis


def verified_dimension(problem: SequentialProblem) -> int:
    """Number of basis elements the problem's word actually annihilates."""
    word = sequential_word(problem)
    return sum(
        1 for element in solution_space_basis(problem) if apply_word(word, element).result.is_zero
    )


def solve_sequential(problem: SequentialProblem) -> PowerSum:
    """
    General-solution representative J f + sum of constants times the basis.

    Missing constants count as zero.

    Args:
        problem: Sequential problem with right-hand side f

    Returns:
        PowerSum: The solution for the given constants

    Raises:
        NotIntegrableError: If f is not of Riemann class
    """
    particular = symbolic.classical_integral(problem.rhs, 1)
    basis = solution_space_basis(problem)
    constants = problem.constants or (0.0,) * len(basis)
    homogeneous = PowerSum.from_pairs(
        (c * coeff, exponent)
        for c, element in zip(constants, basis)
        for coeff, exponent in element.pairs
    )
    return particular + homogeneous


def verify_sequential(
    problem: SequentialProblem, candidate: PowerSum
) -> Tuple[PowerSum, bool]:
    """
    Apply the problem's word to a candidate and compare with the right-hand side.

    Args:
        problem: Sequential problem
        candidate: Proposed solution

    Returns:
        Tuple[PowerSum, bool]: (residual word(candidate) - f, whether it vanishes)
    """
    image = apply_word(sequential_word(problem), candidate).result
    residual = image - problem.rhs
    ok = symbolic.is_close(image, problem.rhs)
    if not ok:
        logger.info("sequential residual for %s: %s", problem.variant.value, residual.render())
    return residual, ok
