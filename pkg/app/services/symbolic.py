"""
Symbolic fractional calculus service.

This module applies the Riemann-Liouville integral, the Riemann-Liouville and
Caputo derivatives and the classical operators exactly, term by term, on
finite power sums. Its results are the reference every numeric routine is
checked against.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.exceptions import DomainError, NotCaputoAdmissibleError, NotIntegrableError
from app.schemas.power_sum import DerivativeKind, FracOrder, PowerSum, snap_exponent
from app.services.special_functions import (
    falling_factorial,
    gamma_ratio,
    reciprocal_gamma,
)

logger = logging.getLogger(__name__)


def _require_riemann_class(f: PowerSum, operation: str) -> None:
    """Raise NotIntegrableError when an exponent is <= -1."""
    if not f.is_riemann_class:
        raise NotIntegrableError(
            f"{operation} needs all exponents > -1",
            {"lowest_exponent": f.lowest_exponent},
        )


def phi_kernel(alpha: float) -> PowerSum:
    """
    Build the kernel t^(alpha-1)/Gamma(alpha) of the fractional integral.

    Args:
        alpha: Order, > 0

    Returns:
        PowerSum: Single-term kernel

    Raises:
        DomainError: If alpha <= 0
    """
    if not alpha > 0.0:
        raise DomainError("the kernel needs alpha > 0", {"alpha": alpha})
    return PowerSum.monomial(alpha - 1.0, reciprocal_gamma(alpha))


def rl_integral(f: PowerSum, order: FracOrder) -> PowerSum:
    """
    Riemann-Liouville fractional integral J^alpha f.

    Each term maps as t^g -> Gamma(g+1)/Gamma(g+1+alpha) t^(g+alpha);
    J^0 is the identity. Integer orders use the repeated integral.

    Args:
        f: Riemann-class power sum
        order: Integration order

    Returns:
        PowerSum: J^alpha f

    Raises:
        NotIntegrableError: If an exponent is <= -1
    """
    _require_riemann_class(f, "fractional integral")
    if order.alpha == 0.0:
        return f
    if order.is_integer:
        return classical_integral(f, order.m)
    alpha = order.alpha
    return PowerSum.from_pairs(
        (c * gamma_ratio(g + 1.0, g + 1.0 + alpha), g + alpha) for c, g in f.pairs
    )


def rl_derivative(f: PowerSum, order: FracOrder) -> PowerSum:
    """
    Riemann-Liouville fractional derivative D^alpha f = D^m J^(m-alpha) f.

    Each term maps as t^g -> Gamma(g+1)/Gamma(g+1-alpha) t^(g-alpha). The
    reciprocal Gamma vanishes at its poles, so the null-space terms
    t^(alpha-j) drop out. The result may leave the Riemann class. Integer
    orders use the power rule.

    Args:
        f: Riemann-class power sum
        order: Differentiation order

    Returns:
        PowerSum: D^alpha f

    Raises:
        NotIntegrableError: If an exponent of f is <= -1
    """
    _require_riemann_class(f, "Riemann-Liouville derivative")
    if order.alpha == 0.0:
        return f
    if order.is_integer:
        return classical_derivative(f, order.m)
    alpha = order.alpha
    return PowerSum.from_pairs(
        (c * gamma_ratio(g + 1.0, snap_exponent(g - alpha) + 1.0), g - alpha) for c, g in f.pairs
    )


def classical_derivative(f: PowerSum, n: int) -> PowerSum:
    """
    n-th classical derivative by the power rule.

    Args:
        f: Any power sum
        n: Number of differentiations, >= 0

    Returns:
        PowerSum: f^(n)
    """
    if n < 0:
        raise DomainError("derivative count must be >= 0", {"n": n})
    if n == 0:
        return f
    return PowerSum.from_pairs(
        (c * falling_factorial(g, n), g - n) for c, g in f.pairs
    )


def classical_integral(f: PowerSum, n: int) -> PowerSum:
    """
    n-fold primitive vanishing at 0 (Cauchy's repeated integral).

    Args:
        f: Riemann-class power sum
        n: Number of integrations, >= 0

    Returns:
        PowerSum: J^n f
    """
    if n < 0:
        raise DomainError("integral count must be >= 0", {"n": n})
    _require_riemann_class(f, "repeated integral")
    result = f
    for _ in range(n):
        result = PowerSum.from_pairs((c / (g + 1.0), g + 1.0) for c, g in result.pairs)
    return result


def limit_at_zero(f: PowerSum) -> float:
    """
    Limit of f(t) as t -> 0+.

    Args:
        f: Power sum

    Returns:
        float: 0 if every exponent is positive, the constant term otherwise

    Raises:
        DomainError: If some exponent is negative (the limit diverges)
    """
    if f.is_zero:
        return 0.0
    lowest = f.terms[0]
    if lowest.exponent < 0.0:
        raise DomainError(
            "the limit at 0+ diverges", {"lowest_exponent": lowest.exponent}
        )
    return f.coefficient_of(0.0)


def is_caputo_admissible(f: PowerSum, order: FracOrder) -> bool:
    """
    Whether f^(m) is locally integrable for the Caputo derivative.

    Every exponent must be a non-negative integer below m or exceed m - 1.
    """
    m = order.m
    if m == 0:
        return f.is_riemann_class
    for term in f.terms:
        g = term.exponent
        if g > m - 1:
            continue
        if g >= 0.0 and g == math.floor(g) and g < m:
            continue
        return False
    return True


def _require_caputo_admissible(f: PowerSum, order: FracOrder) -> None:
    if not is_caputo_admissible(f, order):
        raise NotCaputoAdmissibleError(
            "f^(m) is not locally integrable for this order",
            {"alpha": order.alpha, "m": order.m, "lowest_exponent": f.lowest_exponent},
        )


def initial_derivatives(f: PowerSum, m: int) -> List[float]:
    """
    Initial values f^(k)(0+) for k = 0..m-1.

    Args:
        f: Power sum
        m: Number of initial values

    Returns:
        List[float]: f^(k)(0+) by k

    Raises:
        NotCaputoAdmissibleError: If one of the limits diverges
    """
    values = []
    for k in range(m):
        try:
            values.append(limit_at_zero(classical_derivative(f, k)))
        except DomainError as exc:
            raise NotCaputoAdmissibleError(
                f"f^({k})(0+) is unbounded", {**exc.details, "k": k}
            ) from exc
    return values


def taylor_polynomial(f: PowerSum, m: int) -> PowerSum:
    """Taylor polynomial of degree m-1 at 0+: sum f^(k)(0+) t^k / k!."""
    derivs = initial_derivatives(f, m)
    return PowerSum.from_pairs(
        (d / math.factorial(k), float(k)) for k, d in enumerate(derivs)
    )


def caputo_derivative(f: PowerSum, order: FracOrder) -> PowerSum:
    """
    Caputo fractional derivative D_*^alpha f = J^(m-alpha) D^m f.

    Computed as the Riemann-Liouville derivative of f minus its Taylor
    polynomial of degree m-1, which is the same operator on admissible
    inputs. Constants are annihilated.

    Args:
        f: Caputo-admissible power sum
        order: Differentiation order

    Returns:
        PowerSum: D_*^alpha f

    Raises:
        NotCaputoAdmissibleError: If f^(m) is not locally integrable
    """
    _require_caputo_admissible(f, order)
    if order.alpha == 0.0:
        return f
    regular = f - taylor_polynomial(f, order.m)
    return rl_derivative(regular, order)


def decompose_rl_caputo(f: PowerSum, order: FracOrder) -> Tuple[PowerSum, PowerSum]:
    """
    Split D^alpha f into the Caputo part and the initial-value correction.

    The correction is sum_k f^(k)(0+) t^(k-alpha)/Gamma(k-alpha+1) over
    k < m, so that caputo_part + correction == D^alpha f.

    Args:
        f: Caputo-admissible power sum
        order: Differentiation order

    Returns:
        Tuple[PowerSum, PowerSum]: (caputo_part, correction)

    Raises:
        NotCaputoAdmissibleError: If f^(m) is not locally integrable
    """
    caputo_part = caputo_derivative(f, order)
    derivs = initial_derivatives(f, order.m)
    correction = PowerSum.from_pairs(
        (d * reciprocal_gamma(k - order.alpha + 1.0), k - order.alpha)
        for k, d in enumerate(derivs)
    )
    return caputo_part, correction


def null_space_basis(kind: DerivativeKind, order: FracOrder) -> List[PowerSum]:
    """
    Basis of the functions the derivative of this order annihilates.

    Args:
        kind: Riemann-Liouville or Caputo
        order: Differentiation order, alpha > 0

    Returns:
        List[PowerSum]: t^(alpha-j) (RL) or t^(m-j) (Caputo) for j = 1..m

    Raises:
        DomainError: If alpha = 0
    """
    if order.alpha == 0.0:
        raise DomainError("the identity operator has a trivial null space")
    m = order.m
    if kind is DerivativeKind.RL:
        return [PowerSum.monomial(order.alpha - j) for j in range(1, m + 1)]
    return [PowerSum.monomial(float(m - j)) for j in range(1, m + 1)]


def evaluate(f: PowerSum, t: float) -> float:
    """
    Evaluate a power sum at t > 0.

    Args:
        f: Power sum
        t: Evaluation point, > 0

    Returns:
        float: sum coeff * t^exponent

    Raises:
        DomainError: If t <= 0
    """
    if not t > 0.0:
        raise DomainError("causal power sums are evaluated at t > 0 only", {"t": t})
    return math.fsum(c * t**g for c, g in f.pairs)


def evaluate_array(f: PowerSum, t: np.ndarray) -> np.ndarray:
    """
    Vectorised evaluation on an array of points > 0.

    Args:
        f: Power sum
        t: Points, all > 0

    Returns:
        np.ndarray: Values at the points
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0.0):
        raise DomainError("causal power sums are evaluated at t > 0 only")
    result = np.zeros_like(t)
    for c, g in f.pairs:
        result += c * np.power(t, g)
    return result


def is_close(
    a: PowerSum,
    b: PowerSum,
    rel_tol: Optional[float] = None,
    abs_floor: Optional[float] = None,
) -> bool:
    """
    Coefficient-wise equality of two power sums.

    Exponents match within the exponent tolerance; coefficients agree within
    ``rel_tol`` relative plus ``abs_floor`` absolute. A term missing on one
    side compares against 0.

    Args:
        a: First sum
        b: Second sum
        rel_tol: Relative tolerance (defaults to settings.TOL)
        abs_floor: Absolute floor (defaults to settings.ABS_FLOOR)

    Returns:
        bool: Whether the sums agree
    """
    rel_tol = settings.TOL if rel_tol is None else rel_tol
    abs_floor = settings.ABS_FLOOR if abs_floor is None else abs_floor
    for term in a.terms:
        other = b.coefficient_of(term.exponent)
        if abs(term.coeff - other) > rel_tol * max(abs(term.coeff), abs(other)) + abs_floor:
            return False
    for term in b.terms:
        other = a.coefficient_of(term.exponent)
        if other == 0.0 and abs(term.coeff) > abs_floor:
            return False
    return True


def max_relative_gap(a: PowerSum, b: PowerSum) -> float:
    """Largest coefficient gap between two sums, relative to the larger side."""
    exponents = sorted({t.exponent for t in a.terms} | {t.exponent for t in b.terms})
    gap = 0.0
    for g in exponents:
        ca, cb = a.coefficient_of(g), b.coefficient_of(g)
        scale = max(abs(ca), abs(cb), settings.ABS_FLOOR)
        gap = max(gap, abs(ca - cb) / scale)
    return gap


def order_limit_errors(
    f: PowerSum, m: int, eps_values: Sequence[float], points: Sequence[float]
) -> List[List[Tuple[float, float]]]:
    """
    Errors of both derivatives against their limits as alpha -> (m-1)+.

    For alpha = m-1+eps, D^alpha f tends to D^(m-1) f and D_*^alpha f tends to
    D^(m-1) f - f^(m-1)(0+).

    Args:
        f: Caputo-admissible power sum for orders in (m-1, m]
        m: Integer ceiling, >= 1
        eps_values: Offsets eps, decreasing
        points: Evaluation points t > 0

    Returns:
        List[List[Tuple[float, float]]]: per eps, per point (rl_error, caputo_error)
    """
    rl_limit = classical_derivative(f, m - 1)
    caputo_limit = rl_limit - PowerSum.constant(initial_derivatives(f, m)[m - 1])
    table = []
    for eps in eps_values:
        order = FracOrder(alpha=m - 1 + eps, m=m)
        rl = rl_derivative(f, order)
        caputo = caputo_derivative(f, order)
        row = []
        for t in points:
            row.append(
                (
                    abs(evaluate(rl - rl_limit, t)),
                    abs(evaluate(caputo - caputo_limit, t)),
                )
            )
        logger.debug("limit check eps=%g: %s", eps, row)
        table.append(row)
    return table
