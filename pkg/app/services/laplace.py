"""
Laplace rule service.

This module maps power sums to their images on the real axis s > 0 and
encodes the operational rules of the fractional integral and of both
fractional derivatives. A graded-quadrature Laplace oracle cross-checks the
symbolic images.
"""

import csv
import io
import logging
import math
from typing import Callable, List, Optional, Sequence

import numpy as np

from app.exceptions import (
    DomainError,
    LengthError,
    NotTransformableError,
    TailBoundError,
    UnboundedInitialValueError,
)
from app.schemas.laplace import LaplaceSample, SPowerSum
from app.schemas.power_sum import FracOrder, PowerSum
from app.schemas.sampled import InitialData
from app.services import symbolic
from app.services.quadrature import graded_integral
from app.services.special_functions import gamma

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]

# e^(-s*H) at the default horizon.
HORIZON_DECAY = 40.0


def transform(f: PowerSum) -> SPowerSum:
    """
    Laplace image of a power sum: t^g -> Gamma(g+1) s^-(g+1).

    Args:
        f: Power sum with every exponent > -1

    Returns:
        SPowerSum: Image in canonical form

    Raises:
        NotTransformableError: If an exponent is <= -1
    """
    if not f.is_riemann_class:
        raise NotTransformableError(
            "exponents <= -1 have no Laplace image",
            {"lowest_exponent": f.lowest_exponent},
        )
    return SPowerSum.from_pairs((c * gamma(g + 1.0), -(g + 1.0)) for c, g in f.pairs)


def _shift(ftilde: SPowerSum, by: float) -> SPowerSum:
    return SPowerSum.from_pairs((c, e + by) for c, e in ftilde.pairs)


def rule_j(order: FracOrder, ftilde: SPowerSum) -> SPowerSum:
    """Image of J^alpha f: every s-exponent drops by alpha."""
    if order.alpha == 0.0:
        return ftilde
    return _shift(ftilde, -order.alpha)


def rule_caputo(
    order: FracOrder, ftilde: SPowerSum, init: InitialData
) -> SPowerSum:
    """
    Image of the Caputo derivative: s^alpha F - sum_k f^(k)(0+) s^(alpha-1-k).

    Args:
        order: Differentiation order
        ftilde: Image of f
        init: f^(k)(0+) for k = 0..m-1

    Returns:
        SPowerSum: Canonical image, cancellations performed

    Raises:
        LengthError: If ``init`` does not hold exactly m values
    """
    if len(init.derivs) != order.m:
        raise LengthError(
            "initial data must hold one value per k < m",
            {"m": order.m, "given": len(init.derivs)},
        )
    alpha = order.alpha
    series = SPowerSum.from_pairs(
        (d, alpha - 1.0 - k) for k, d in enumerate(init.derivs)
    )
    return _shift(ftilde, alpha) - series


def rule_rl(
    order: FracOrder, ftilde: SPowerSum, rl_init: Sequence[float]
) -> SPowerSum:
    """
    Image of the Riemann-Liouville derivative.

    s^alpha F - sum_k r_k s^(m-1-k), where r_k = D^k J^(m-alpha) f (0+).

    Args:
        order: Differentiation order
        ftilde: Image of f
        rl_init: Bounded initial values r_k for k = 0..m-1

    Returns:
        SPowerSum: Canonical image

    Raises:
        LengthError: If ``rl_init`` does not hold exactly m values
    """
    if len(rl_init) != order.m:
        raise LengthError(
            "initial data must hold one value per k < m",
            {"m": order.m, "given": len(rl_init)},
        )
    series = SPowerSum.from_pairs(
        (float(r), float(order.m - 1 - k)) for k, r in enumerate(rl_init)
    )
    return _shift(ftilde, order.alpha) - series


def rl_initial_values(f: PowerSum, order: FracOrder) -> List[float]:
    """
    Initial values (D^k J^(m-alpha) f)(0+) for k = 0..m-1.

    Args:
        f: Riemann-class power sum
        order: Differentiation order

    Returns:
        List[float]: One value per k

    Raises:
        NotIntegrableError: If f is not of Riemann class
        UnboundedInitialValueError: If a required limit diverges
    """
    integrated = symbolic.rl_integral(f, FracOrder.of(order.m - order.alpha))
    values = []
    for k in range(order.m):
        try:
            values.append(
                symbolic.limit_at_zero(symbolic.classical_derivative(integrated, k))
            )
        except DomainError as exc:
            raise UnboundedInitialValueError(
                f"D^{k} J^(m-alpha) f is unbounded at 0+", {**exc.details, "k": k}
            ) from exc
    return values


def evaluate_s(ftilde: SPowerSum, s: float) -> float:
    """Evaluate an image at real s > 0."""
    if not s > 0.0:
        raise DomainError("images are evaluated at real s > 0", {"s": s})
    return math.fsum(c * s**e for c, e in ftilde.pairs)


def default_horizon(s: float) -> float:
    """Truncation point where e^(-s*H) reaches e^-40."""
    return max(1.0, HORIZON_DECAY / s)


def _extrapolated_tail(fn: Evaluator, s: float, horizon: float) -> float:
    """Tail bound from a power law C (t/H)^p fitted to f(H/2) and f(H)."""
    head, end = np.abs(np.asarray(fn(np.array([0.5 * horizon, horizon])), dtype=float))
    if end == 0.0:
        return 0.0
    if head == 0.0 or not (math.isfinite(head) and math.isfinite(end)):
        raise TailBoundError(
            "cannot extrapolate the tail of f", {"f_half": head, "f_horizon": end}
        )
    power = max(0.0, math.log(end / head) / math.log(2.0))
    rate = s - power / horizon
    if not rate > 0.0:
        raise TailBoundError(
            "f grows too fast for a tail bound at this s",
            {"s": s, "power": power, "horizon": horizon},
        )
    return end * math.exp(-s * horizon) / rate


def numeric_laplace(
    fn: Evaluator,
    s: float,
    horizon: float,
    tol: float,
    tail_bound: Optional[float] = None,
) -> float:
    """
    Laplace transform by graded quadrature on [0, horizon] plus a tail bound.

    The quadrature is graded toward 0, where f may behave like t^(eps-1).
    The tail beyond the horizon is bounded by ``tail_bound * e^(-sH) / s``
    when the caller gives sup |f| on [H, inf), and by a power-law
    extrapolation otherwise.

    Args:
        fn: Vectorised evaluator on t > 0
        s: Real transform variable, > 0
        horizon: Truncation point H, > 0
        tol: Absolute error target, > 0
        tail_bound: Bound of |f| beyond the horizon

    Returns:
        float: Approximation of the transform at s

    Raises:
        NonConvergenceError: If refinement hits the cap
        TailBoundError: If the tail estimate exceeds ``tol``
    """
    if not s > 0.0:
        raise DomainError("the Laplace oracle needs real s > 0", {"s": s})
    if not (horizon > 0.0 and tol > 0.0):
        raise DomainError(
            "horizon and tolerance must be positive", {"horizon": horizon, "tol": tol}
        )
    if tail_bound is not None:
        tail = abs(tail_bound) * math.exp(-s * horizon) / s
    else:
        tail = _extrapolated_tail(fn, s, horizon)
    if tail > tol:
        raise TailBoundError(
            "truncation tail exceeds the tolerance",
            {"tail": tail, "tol": tol, "horizon": horizon},
        )

    def integrand(t: np.ndarray) -> np.ndarray:
        return np.exp(-s * t) * fn(t)

    value = graded_integral(integrand, 0.0, horizon, 0.5 * tol, True, False)
    logger.debug("laplace s=%g value=%.17g tail<=%.3g", s, value, tail)
    return value


def cross_check(
    f: PowerSum,
    s_values: Sequence[float],
    tol: float = 1e-10,
    image: Optional[SPowerSum] = None,
) -> List[LaplaceSample]:
    """
    Compare the symbolic image of f with the Laplace oracle at each s.

    Args:
        f: Riemann-class power sum
        s_values: Points s > 0
        tol: Oracle tolerance
        image: Image to test instead of transform(f), e.g. from an operational rule

    Returns:
        List[LaplaceSample]: One row per s
    """
    image = transform(f) if image is None else image

    def fn(t: np.ndarray) -> np.ndarray:
        return symbolic.evaluate_array(f, t)

    rows = []
    for s in s_values:
        exact = evaluate_s(image, s)
        approx = numeric_laplace(fn, s, default_horizon(s), tol)
        rows.append(
            LaplaceSample(s=s, symbolic=exact, numeric=approx, abs_diff=abs(exact - approx))
        )
    return rows


def to_csv(rows: Sequence[LaplaceSample]) -> str:
    """Render cross-check rows as CSV with header ``s,symbolic,numeric,abs_diff``."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["s", "symbolic", "numeric", "abs_diff"])
    for row in rows:
        writer.writerow(
            [f"{row.s:.17g}", f"{row.symbolic:.17g}", f"{row.numeric:.17g}", f"{row.abs_diff:.17g}"]
        )
    return buffer.getvalue()
