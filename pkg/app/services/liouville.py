"""
Liouville and Weyl operator service.

This module applies the fractional integral with lower limit -infinity and
the matching derivative to the closed-form Liouville-class terms, computes
the Weyl integral (upper limit +infinity) by reflection t' = -t, classifies
terms by integrability, and provides truncated-quadrature spot checks with
explicit tail bounds.
"""

import logging
import math
from typing import Optional, Tuple, Union

import numpy as np

from app.config import settings
from app.exceptions import DomainError, NotLiouvilleClassError
from app.schemas.liouville import FunctionClass, LiouvilleTerm, LiouvilleVariant
from app.schemas.power_sum import FracOrder, PowerSum, PowerTerm
from app.schemas.report import JumpIdentityResult
from app.services import symbolic
from app.services.quadrature import kernel_integral
from app.services.special_functions import (
    gamma_ratio,
    reciprocal_gamma,
    regularized_upper_gamma,
)

logger = logging.getLogger(__name__)


def reflect(term: LiouvilleTerm) -> LiouvilleTerm:
    """Mirror a term through t' = -t; applying it twice is the identity."""
    return term.model_copy(update={"reflected": not term.reflected})


def _require_class(term: LiouvilleTerm, order: FracOrder) -> None:
    if (
        term.variant is LiouvilleVariant.POWER_OF_ABS
        and not term.delta > order.alpha  # type: ignore[operator]
    ):
        raise NotLiouvilleClassError(
            "the decay power must exceed the order",
            {"delta": term.delta, "alpha": order.alpha},
        )


def _with(term: LiouvilleTerm, coeff: float, delta: Optional[float] = None) -> LiouvilleTerm:
    update: dict = {"coeff": coeff}
    if delta is not None:
        update["delta"] = delta
    return term.model_copy(update=update)


def liouville_integral(term: LiouvilleTerm, order: FracOrder) -> LiouvilleTerm:
    """
    Fractional integral with lower limit -infinity.

    |t|^-d -> Gamma(d-alpha)/Gamma(d) |t|^(alpha-d) for d > alpha, and
    e^(ct) -> c^-alpha e^(ct).

    Args:
        term: Unreflected Liouville-class term
        order: Integration order

    Returns:
        LiouvilleTerm: J^alpha_{-inf} term

    Raises:
        NotLiouvilleClassError: If delta <= alpha
        DomainError: If the term is reflected
    """
    if term.reflected:
        raise DomainError("reflected terms take the Weyl integral")
    if order.alpha == 0.0:
        return term
    _require_class(term, order)
    alpha = order.alpha
    if term.variant is LiouvilleVariant.POWER_OF_ABS:
        delta = term.delta
        return _with(term, term.coeff * gamma_ratio(delta - alpha, delta), delta - alpha)
    return _with(term, term.coeff * term.rate ** (-alpha))


def liouville_derivative(term: LiouvilleTerm, order: FracOrder) -> LiouvilleTerm:
    """
    Fractional derivative with lower limit -infinity.

    |t|^-d -> Gamma(d+alpha)/Gamma(d) |t|^-(d+alpha) and e^(ct) -> c^alpha e^(ct).

    Args:
        term: Unreflected term
        order: Differentiation order

    Returns:
        LiouvilleTerm: D^alpha_{-inf} term
    """
    if term.reflected:
        raise DomainError("Weyl derivatives are not provided")
    if order.alpha == 0.0:
        return term
    alpha = order.alpha
    if term.variant is LiouvilleVariant.POWER_OF_ABS:
        delta = term.delta
        return _with(term, term.coeff * gamma_ratio(delta + alpha, delta), delta + alpha)
    return _with(term, term.coeff * term.rate**alpha)


def classical_derivative(term: LiouvilleTerm, n: int) -> LiouvilleTerm:
    """
    n-th ordinary derivative of a closed-form term.

    On t < 0, d/dt |t|^-d = d |t|^-(d+1); the reflected forms pick up (-1)^n.
    """
    if n < 0:
        raise DomainError("derivative count must be >= 0", {"n": n})
    sign = -1.0 if term.reflected and n % 2 else 1.0
    if term.variant is LiouvilleVariant.POWER_OF_ABS:
        delta = term.delta
        return _with(term, sign * term.coeff * gamma_ratio(delta + n, delta), delta + n)
    return _with(term, sign * term.coeff * term.rate**n)


def weyl_integral(term: LiouvilleTerm, order: FracOrder) -> LiouvilleTerm:
    """
    Weyl integral with upper limit +infinity, computed by reflection.

    W^alpha g(t') = J^alpha_{-inf} f(t) with g(t') = f(-t').

    Args:
        term: Reflected term (e^(-ct') or t'^-d on t' > 0)
        order: Integration order

    Returns:
        LiouvilleTerm: Reflected result

    Raises:
        NotLiouvilleClassError: If delta <= alpha
        DomainError: If the term is not reflected
    """
    if not term.reflected:
        raise DomainError("the Weyl integral acts on reflected terms")
    return reflect(liouville_integral(reflect(term), order))


def evaluate_liouville(term: LiouvilleTerm, t: float) -> float:
    """
    Evaluate a term at one point.

    Unreflected powers live on t < 0 and reflected powers on t > 0;
    exponentials are defined everywhere.
    """
    return float(evaluate_liouville_array(term, np.array([t], dtype=float))[0])


def evaluate_liouville_array(term: LiouvilleTerm, t: np.ndarray) -> np.ndarray:
    """Vectorised :func:`evaluate_liouville`."""
    t = np.asarray(t, dtype=float)
    if term.variant is LiouvilleVariant.EXPONENTIAL:
        rate = -term.rate if term.reflected else term.rate
        return term.coeff * np.exp(rate * t)
    distance = t if term.reflected else -t
    if np.any(distance <= 0.0):
        raise DomainError(
            "abs(t)^-d is evaluated on its half-line only",
            {"reflected": term.reflected},
        )
    return term.coeff * np.power(distance, -term.delta)


def classify(
    term: Union[PowerSum, PowerTerm, LiouvilleTerm], order: FracOrder
) -> FunctionClass:
    """
    Integrability class of a term for operators of this order.

    Causal powers are of Riemann class when every exponent is > -1. A power
    |t|^-d is of Liouville class when d > alpha, an exponential e^(ct) with
    c > 0 always is.

    Args:
        term: Power term, power sum or Liouville term
        order: Operator order

    Returns:
        FunctionClass: Riemann, Liouville or Neither
    """
    if isinstance(term, PowerTerm):
        return FunctionClass.RIEMANN if term.exponent > -1.0 else FunctionClass.NEITHER
    if isinstance(term, PowerSum):
        return FunctionClass.RIEMANN if term.is_riemann_class else FunctionClass.NEITHER
    if term.variant is LiouvilleVariant.EXPONENTIAL:
        return FunctionClass.LIOUVILLE
    if term.delta > order.alpha:  # type: ignore[operator]
        return FunctionClass.LIOUVILLE
    return FunctionClass.NEITHER


def causal_jump_identity_check(
    f: PowerSum, order: FracOrder, t: float
) -> JumpIdentityResult:
    """
    Evaluate both sides of t^-alpha f(0+)/Gamma(1-alpha) + D_*^alpha f = D^alpha f.

    Args:
        f: Caputo-admissible power sum
        order: Order with 0 < alpha < 1
        t: Evaluation point, > 0

    Returns:
        JumpIdentityResult: Both sides and their relative difference
    """
    alpha = order.alpha
    if not 0.0 < alpha < 1.0:
        raise DomainError("the jump identity needs 0 < alpha < 1", {"alpha": alpha})
    jump = symbolic.limit_at_zero(f) * t ** (-alpha) * reciprocal_gamma(1.0 - alpha)
    lhs = jump + symbolic.evaluate(symbolic.caputo_derivative(f, order), t)
    rhs = symbolic.evaluate(symbolic.rl_derivative(f, order), t)
    diff = abs(lhs - rhs) / max(abs(lhs), abs(rhs), settings.ABS_FLOOR)
    return JumpIdentityResult(lhs=lhs, rhs=rhs, diff=diff, ok=diff <= settings.TOL)


def _power_tail(term: LiouvilleTerm, alpha: float, length: float) -> float:
    # |f(t -+ v)| <= |a| v^-delta beyond the cut
    delta = term.delta
    return abs(term.coeff) * length ** (alpha - delta) / (delta - alpha) * reciprocal_gamma(alpha)


def _exponential_tail(term: LiouvilleTerm, alpha: float, length: float, at: float) -> float:
    rate = term.rate
    return (
        abs(term.coeff)
        * math.exp(rate * at)
        * rate ** (-alpha)
        * regularized_upper_gamma(alpha, rate * length)
    )


def liouville_integral_numeric(
    term: LiouvilleTerm,
    order: FracOrder,
    t: float,
    truncation: float,
    tol: float = 1e-10,
) -> Tuple[float, float]:
    """
    Truncated quadrature of J^alpha_{-inf} f(t) over [-truncation, t].

    Args:
        term: Unreflected Liouville-class term
        order: Integration order, alpha > 0
        t: Evaluation point (t < 0 for powers)
        truncation: T with -T < t
        tol: Quadrature tolerance

    Returns:
        Tuple[float, float]: (value, bound of the neglected tail)
    """
    if term.reflected:
        raise DomainError("reflected terms take the Weyl integral")
    if not order.alpha > 0.0:
        raise DomainError("truncated quadrature needs alpha > 0")
    _require_class(term, order)
    length = t + truncation
    if not length > 0.0:
        raise DomainError("truncation must satisfy -T < t", {"t": t, "T": truncation})
    alpha = order.alpha

    def integrand(v: np.ndarray) -> np.ndarray:
        return evaluate_liouville_array(term, t - v)

    value = kernel_integral(integrand, alpha, length, tol) * reciprocal_gamma(alpha)
    if term.variant is LiouvilleVariant.EXPONENTIAL:
        tail = _exponential_tail(term, alpha, length, t)
    else:
        tail = _power_tail(term, alpha, length)
    logger.debug("liouville quadrature t=%g T=%g value=%.17g tail<=%.3g", t, truncation, value, tail)
    return value, tail


def weyl_integral_numeric(
    term: LiouvilleTerm,
    order: FracOrder,
    t: float,
    truncation: float,
    tol: float = 1e-10,
) -> Tuple[float, float]:
    """
    Truncated quadrature of W^alpha g(t) over [t, truncation].

    Args:
        term: Reflected term
        order: Integration order, alpha > 0
        t: Evaluation point (t > 0 for powers)
        truncation: Upper cut T > t

    Returns:
        Tuple[float, float]: (value, bound of the neglected tail)
    """
    if not term.reflected:
        raise DomainError("the Weyl integral acts on reflected terms")
    if not order.alpha > 0.0:
        raise DomainError("truncated quadrature needs alpha > 0")
    _require_class(term, order)
    length = truncation - t
    if not length > 0.0:
        raise DomainError("truncation must satisfy T > t", {"t": t, "T": truncation})
    alpha = order.alpha

    def integrand(v: np.ndarray) -> np.ndarray:
        return evaluate_liouville_array(term, t + v)

    value = kernel_integral(integrand, alpha, length, tol) * reciprocal_gamma(alpha)
    if term.variant is LiouvilleVariant.EXPONENTIAL:
        tail = _exponential_tail(term, alpha, length, -t)
    else:
        tail = _power_tail(term, alpha, length)
    return value, tail
