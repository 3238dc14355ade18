"""
Special functions service.

This module provides the real Gamma and Beta functions the operator rules are
built on. Values come from ``scipy.special``; this layer adds pole handling,
overflow detection and sign-tracked ratios for large arguments.
"""

import math
from typing import Tuple

from scipy import special

from app.exceptions import DomainError, PoleError


def is_pole(x: float) -> bool:
    """Whether x is a pole of Gamma, i.e. one of 0, -1, -2, ..."""
    return x <= 0.0 and x == math.floor(x)


def _require_finite(x: float, name: str = "x") -> None:
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite", {name: x})


def gamma(x: float) -> float:
    """
    Evaluate Gamma(x) on the real line.

    Args:
        x: Finite real argument, not a non-positive integer

    Returns:
        float: Gamma(x)

    Raises:
        PoleError: If x is 0, -1, -2, ...
        OverflowError: If |Gamma(x)| exceeds the double range
    """
    _require_finite(x)
    if is_pole(x):
        raise PoleError("Gamma has a pole at non-positive integers", {"x": x})
    value = float(special.gamma(x))
    if math.isinf(value) or math.isnan(value):
        raise OverflowError(f"|Gamma({x})| exceeds the representable range")
    return value


def reciprocal_gamma(x: float) -> float:
    """
    Evaluate 1/Gamma(x), an entire function.

    Returns exactly 0 at the poles of Gamma, so coefficient formulas with a
    Gamma in the denominator vanish in integer-degenerate cases.

    Args:
        x: Finite real argument

    Returns:
        float: 1/Gamma(x)
    """
    _require_finite(x)
    if is_pole(x):
        return 0.0
    return float(special.rgamma(x))


def log_gamma(x: float) -> Tuple[float, float]:
    """
    Evaluate log|Gamma(x)| together with the sign of Gamma(x).

    Args:
        x: Finite real argument, not a pole

    Returns:
        Tuple[float, float]: (log|Gamma(x)|, sign)

    Raises:
        PoleError: If x is a pole
    """
    _require_finite(x)
    if is_pole(x):
        raise PoleError("Gamma has a pole at non-positive integers", {"x": x})
    return float(special.gammaln(x)), float(special.gammasgn(x))


def gamma_ratio(a: float, b: float) -> float:
    """
    Evaluate Gamma(a)/Gamma(b) without intermediate overflow.

    A pole in the denominator gives 0 (the reciprocal vanishes there).

    Args:
        a: Numerator argument, not a pole
        b: Denominator argument

    Returns:
        float: Gamma(a)/Gamma(b)

    Raises:
        PoleError: If a is a pole
        OverflowError: If the ratio itself exceeds the double range
    """
    _require_finite(a, "a")
    _require_finite(b, "b")
    if is_pole(a):
        raise PoleError("Gamma has a pole at non-positive integers", {"x": a})
    if is_pole(b):
        return 0.0
    if abs(a) < 170.0 and abs(b) < 170.0:
        return float(special.gamma(a)) * float(special.rgamma(b))
    log_a, sign_a = log_gamma(a)
    log_b, sign_b = log_gamma(b)
    exponent = log_a - log_b
    if exponent > 709.0:
        raise OverflowError(f"Gamma({a})/Gamma({b}) exceeds the representable range")
    return sign_a * sign_b * math.exp(exponent)


def beta(p: float, q: float) -> float:
    """
    Evaluate the Beta function B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q).

    Args:
        p: First argument, > 0
        q: Second argument, > 0

    Returns:
        float: B(p, q)

    Raises:
        DomainError: If p <= 0 or q <= 0
    """
    _require_finite(p, "p")
    _require_finite(q, "q")
    if p <= 0.0 or q <= 0.0:
        raise DomainError("Beta requires p > 0 and q > 0", {"p": p, "q": q})
    return float(special.beta(p, q))


def falling_factorial(x: float, n: int) -> float:
    """Product x (x - 1) ... (x - n + 1); 1 for n = 0."""
    result = 1.0
    for k in range(n):
        result *= x - k
    return result


def regularized_upper_gamma(a: float, x: float) -> float:
    """
    Regularized upper incomplete Gamma Q(a, x) = Gamma(a, x)/Gamma(a).

    Args:
        a: Shape, > 0
        x: Lower limit, >= 0

    Returns:
        float: Q(a, x) in [0, 1]
    """
    _require_finite(a, "a")
    _require_finite(x, "x")
    if a <= 0.0 or x < 0.0:
        raise DomainError("Q(a, x) requires a > 0 and x >= 0", {"a": a, "x": x})
    return float(special.gammaincc(a, x))
