"""
Graded-mesh Gauss quadrature.

This module provides the brute-force integration engine behind the oracles:
composite Gauss-Legendre rules on a mesh that is uniform in the interior and
geometrically graded toward endpoints where the integrand may be weakly
singular. Refinement raises the grading depth, the panel count and the Gauss
order together until two successive estimates agree.
"""

import logging
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from app.config import settings
from app.exceptions import NonConvergenceError

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

# Ratio between consecutive panels of the geometric grading.
GRADING_RATIO = 0.2
START_LEVEL = 4
LEVEL_STEP = 2


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gauss-Legendre nodes and weights on [-1, 1].

    Args:
        order: Number of nodes

    Returns:
        Tuple[np.ndarray, np.ndarray]: Read-only (nodes, weights)
    """
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def graded_mesh(
    a: float, b: float, level: int, grade_left: bool = True, grade_right: bool = True
) -> np.ndarray:
    """
    Panel edges on [a, b] for a given refinement level.

    Args:
        a: Left end
        b: Right end, > a
        level: Refinement level (panel count and grading depth)
        grade_left: Grade geometrically toward a
        grade_right: Grade geometrically toward b

    Returns:
        np.ndarray: Increasing panel edges including a and b
    """
    edges = np.linspace(a, b, max(2, level) + 1)
    extra = []
    powers = GRADING_RATIO ** np.arange(1, level + 1)
    if grade_left:
        extra.append(a + (edges[1] - a) * powers)
    if grade_right:
        extra.append(b - (b - edges[-2]) * powers)
    if extra:
        edges = np.concatenate([edges, *extra])
    edges = np.unique(edges)
    return edges[(edges >= a) & (edges <= b)]


def composite_gauss(fn: Integrand, edges: np.ndarray, order: int) -> float:
    """
    Composite Gauss-Legendre rule over consecutive panels.

    Args:
        fn: Vectorised integrand
        edges: Panel edges
        order: Nodes per panel

    Returns:
        float: Integral estimate
    """
    nodes, weights = gauss_legendre(order)
    left = edges[:-1, None]
    half = 0.5 * np.diff(edges)[:, None]
    points = left + half * (nodes[None, :] + 1.0)
    values = np.asarray(fn(points.ravel()), dtype=float).reshape(points.shape)
    return float(np.sum(half * values * weights[None, :]))


def graded_integral(
    fn: Integrand,
    a: float,
    b: float,
    tol: float,
    grade_left: bool = True,
    grade_right: bool = True,
    max_level: Optional[int] = None,
) -> float:
    """
    Integrate ``fn`` over [a, b] until successive refinements differ by < tol.

    Args:
        fn: Vectorised integrand, finite on the open interval
        a: Left end
        b: Right end
        tol: Absolute agreement target, > 0
        grade_left: Grade toward a
        grade_right: Grade toward b
        max_level: Refinement cap (defaults to settings.QUADRATURE_MAX_LEVEL)

    Returns:
        float: Integral estimate

    Raises:
        NonConvergenceError: If the cap is reached, with the last two estimates
    """
    if b == a:
        return 0.0
    if b < a:
        return -graded_integral(fn, b, a, tol, grade_right, grade_left, max_level)
    max_level = settings.QUADRATURE_MAX_LEVEL if max_level is None else max_level
    previous: Optional[float] = None
    estimate: Optional[float] = None
    level = START_LEVEL
    while level <= max_level:
        previous = estimate
        edges = graded_mesh(a, b, level, grade_left, grade_right)
        estimate = composite_gauss(fn, edges, min(4 + level // 2, 40))
        logger.debug("graded quadrature level=%d estimate=%.17g", level, estimate)
        if previous is not None and abs(estimate - previous) < tol:
            return estimate
        level += LEVEL_STEP
    raise NonConvergenceError(
        "graded quadrature did not converge",
        {"estimates": (previous, estimate), "tol": tol, "max_level": max_level},
    )


def kernel_integral(
    fn: Integrand,
    alpha: float,
    length: float,
    tol: float,
    max_level: Optional[int] = None,
) -> float:
    """
    Integrate v^(alpha-1) fn(v) over [0, length].

    The substitution u = v^alpha absorbs the weak singularity of the kernel,
    leaving (1/alpha) times the integral of fn(u^(1/alpha)) over
    [0, length^alpha]; what remains is graded toward u = 0.

    Args:
        fn: Vectorised function of the distance v
        alpha: Kernel exponent plus one, > 0
        length: Upper limit, >= 0
        tol: Absolute agreement target
        max_level: Refinement cap

    Returns:
        float: Integral estimate
    """
    if length <= 0.0:
        return 0.0
    inv = 1.0 / alpha

    def substituted(u: np.ndarray) -> np.ndarray:
        return fn(np.power(u, inv))

    upper = length**alpha
    return inv * graded_integral(
        substituted, 0.0, upper, tol * alpha, True, False, max_level
    )
