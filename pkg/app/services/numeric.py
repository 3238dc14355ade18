"""
Numeric fractional calculus service.

This module approximates J^alpha, D_*^alpha and D^alpha for functions sampled
on a uniform grid. The integral uses the product-trapezoidal rule: the
piecewise-linear interpolant of f is integrated exactly against the kernel,
which is second order for smooth f. The derivatives reuse the same rule on a
reconstructed m-th derivative. An independent graded-mesh oracle and a
convergence harness check the scheme against the symbolic service.
"""

import csv
import io
import logging
import math
from enum import Enum
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Union

import numpy as np

from app.exceptions import DomainError, LengthError, UnsupportedOrderError
from app.schemas.power_sum import FracOrder, PowerSum
from app.schemas.report import ConvergenceReport
from app.schemas.sampled import InitialData, SampledFunction
from app.services import symbolic
from app.services.quadrature import Integrand, graded_integral, kernel_integral
from app.services.special_functions import gamma, reciprocal_gamma

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]

# Relative spacing tolerance of CSV grids.
GRID_SPACING_TOL = 1e-9

# Cap of the rate the discrete semigroup defect is held to. The defect of the
# product-trapezoidal rule vanishes like step^min(a+b, 2).
SEMIGROUP_RATE_CAP = 1.5


class NumericOperator(str, Enum):
    """Operators covered by the convergence harness."""

    J = "J"
    CAPUTO = "Caputo"
    RL = "RL"


def as_evaluator(f: PowerSum) -> Evaluator:
    """Wrap a power sum as a vectorised evaluator on t > 0."""

    def evaluator(t: np.ndarray) -> np.ndarray:
        return symbolic.evaluate_array(f, t)

    return evaluator


def sample(
    f: Union[PowerSum, Evaluator], horizon: float, n_intervals: int
) -> SampledFunction:
    """
    Sample a function on the uniform grid j * horizon / N, j = 0..N.

    Args:
        f: Power sum (value at 0 is its limit at 0+) or vectorised evaluator
        horizon: Right end T, > 0
        n_intervals: Number of intervals N, >= 2

    Returns:
        SampledFunction: The samples

    Raises:
        DomainError: If a power sum is unbounded at 0+
    """
    if not horizon > 0.0:
        raise DomainError("grid horizon must be positive", {"horizon": horizon})
    step = horizon / n_intervals
    times = step * np.arange(n_intervals + 1, dtype=float)
    if isinstance(f, PowerSum):
        try:
            head = symbolic.limit_at_zero(f)
        except DomainError as exc:
            raise DomainError(
                "functions singular at 0 cannot be sampled", exc.details
            ) from exc
        values = np.concatenate([[head], symbolic.evaluate_array(f, times[1:])])
    else:
        values = np.asarray(f(times), dtype=float)
    return SampledFunction.from_array(step, values)


@lru_cache(maxsize=32)
def product_trapezoid_weights(alpha: float, n_intervals: int):
    """
    Convolution weights of the product-trapezoidal rule.

    J^alpha f(t_n) = h^alpha/Gamma(alpha+2) * (a0[n] f_0 + sum_{j=1..n} c[n-j] f_j)
    with c[0] = 1, c[k] = (k+1)^(alpha+1) - 2 k^(alpha+1) + (k-1)^(alpha+1) and
    a0[n] = (n-1)^(alpha+1) - (n-1-alpha) n^alpha.

    Args:
        alpha: Order, > 0
        n_intervals: Largest node index N

    Returns:
        Tuple[np.ndarray, np.ndarray]: Read-only (c, a0), each of length N+1
    """
    k = np.arange(n_intervals + 2, dtype=float)
    powers = k ** (alpha + 1.0)
    c = np.empty(n_intervals + 1)
    c[0] = 1.0
    c[1:] = powers[2 : n_intervals + 2] - 2.0 * powers[1 : n_intervals + 1] + powers[
        0:n_intervals
    ]
    n = k[: n_intervals + 1]
    a0 = np.zeros(n_intervals + 1)
    a0[1:] = (n[1:] - 1.0) ** (alpha + 1.0) - (n[1:] - 1.0 - alpha) * n[1:] ** alpha
    c.flags.writeable = False
    a0.flags.writeable = False
    return c, a0


def _integrate_samples(values: np.ndarray, step: float, alpha: float) -> np.ndarray:
    """Product-trapezoidal J^alpha on raw samples."""
    n_intervals = len(values) - 1
    c, a0 = product_trapezoid_weights(float(alpha), n_intervals)
    result = np.zeros_like(values)
    tail = np.convolve(c, values[1:])[:n_intervals]
    result[1:] = a0[1:] * values[0] + tail
    return result * (step**alpha * reciprocal_gamma(alpha + 2.0))


def rl_integral_numeric(f: SampledFunction, order: FracOrder) -> SampledFunction:
    """
    Riemann-Liouville integral of a sampled function.

    Args:
        f: Samples on a uniform grid
        order: Integration order (alpha = 0 is the identity)

    Returns:
        SampledFunction: J^alpha f on the same grid
    """
    if order.alpha == 0.0:
        return f
    values = _integrate_samples(f.array, f.step, order.alpha)
    return SampledFunction.from_array(f.step, values)


def reconstruct_derivative(f: SampledFunction, m: int) -> np.ndarray:
    """
    Second-order finite-difference derivative of order m in {1, 2}.

    Central differences inside, second-order one-sided formulas at both
    ends. Formulas are written in first differences so constants give
    exact zeros.

    Args:
        f: Samples with N >= 4
        m: Derivative order, 1 or 2

    Returns:
        np.ndarray: Derivative samples on the same grid

    Raises:
        UnsupportedOrderError: If m > 2
        DomainError: If N < 4
    """
    if m > 2:
        raise UnsupportedOrderError(
            "finite-difference reconstruction covers m <= 2 only", {"m": m}
        )
    if f.n_intervals < 4:
        raise DomainError(
            "derivative reconstruction needs N >= 4", {"N": f.n_intervals}
        )
    h = f.step
    d = np.diff(f.array)
    n = len(d)
    out = np.empty(n + 1)
    if m == 1:
        out[1:-1] = (d[1:] + d[:-1]) / (2.0 * h)
        out[0] = (3.0 * d[0] - d[1]) / (2.0 * h)
        out[-1] = (3.0 * d[-1] - d[-2]) / (2.0 * h)
    else:
        out[1:-1] = (d[1:] - d[:-1]) / h**2
        out[0] = (-2.0 * d[0] + 3.0 * d[1] - d[2]) / h**2
        out[-1] = (2.0 * d[-1] - 3.0 * d[-2] + d[-3]) / h**2
    return out


def caputo_derivative_numeric(
    f: SampledFunction,
    order: FracOrder,
    mth_deriv: Optional[SampledFunction] = None,
) -> SampledFunction:
    """
    Caputo derivative of a sampled function.

    Applies the product-trapezoidal J^(m-alpha) to f^(m), taken from
    ``mth_deriv`` when given and reconstructed by finite differences
    otherwise. Integer orders return f^(m) itself.

    Args:
        f: Samples on a uniform grid
        order: Differentiation order
        mth_deriv: Exact samples of f^(m) on the same grid

    Returns:
        SampledFunction: D_*^alpha f on the same grid

    Raises:
        UnsupportedOrderError: If alpha > 2 and no m-th derivative is given
        LengthError: If ``mth_deriv`` lives on another grid
    """
    if order.alpha == 0.0:
        return f
    if mth_deriv is not None:
        if len(mth_deriv.values) != len(f.values) or not math.isclose(
            mth_deriv.step, f.step, rel_tol=GRID_SPACING_TOL
        ):
            raise LengthError(
                "the m-th derivative must share the grid of f",
                {"n": len(f.values), "n_deriv": len(mth_deriv.values)},
            )
        derivative = mth_deriv.array
    else:
        if order.m > 2:
            raise UnsupportedOrderError(
                "Caputo orders above 2 need the m-th derivative supplied",
                {"alpha": order.alpha},
            )
        derivative = reconstruct_derivative(f, order.m)
    if order.is_integer:
        return SampledFunction.from_array(f.step, derivative)
    values = _integrate_samples(derivative, f.step, order.m - order.alpha)
    return SampledFunction.from_array(f.step, values)


def correction_series(
    init: InitialData, order: FracOrder, times: np.ndarray
) -> np.ndarray:
    """
    Initial-value correction sum_k f^(k)(0+) t^(k-alpha)/Gamma(k-alpha+1).

    Node t = 0 is NaN when a nonzero term has a negative exponent.

    Args:
        init: Initial values, one per k < m
        order: Differentiation order
        times: Grid nodes

    Returns:
        np.ndarray: Correction at each node
    """
    result = np.zeros_like(times)
    singular_at_zero = False
    for k, value in enumerate(init.derivs):
        coeff = value * reciprocal_gamma(k - order.alpha + 1.0)
        if coeff == 0.0:
            continue
        exponent = k - order.alpha
        result[1:] += coeff * np.power(times[1:], exponent)
        if exponent < 0.0:
            singular_at_zero = True
        elif exponent == 0.0:
            result[0] += coeff
    if singular_at_zero:
        result[0] = np.nan
    return result


def rl_derivative_numeric(
    f: SampledFunction,
    order: FracOrder,
    init: InitialData,
    mth_deriv: Optional[SampledFunction] = None,
) -> SampledFunction:
    """
    Riemann-Liouville derivative as Caputo derivative plus correction series.

    Args:
        f: Samples on a uniform grid
        order: Differentiation order
        init: f^(k)(0+) for k = 0..m-1
        mth_deriv: Exact samples of f^(m), forwarded to the Caputo path

    Returns:
        SampledFunction: D^alpha f; node 0 is NaN when the result is unbounded

    Raises:
        LengthError: If ``init`` does not hold exactly m values
    """
    if len(init.derivs) != order.m:
        raise LengthError(
            "initial data must hold one value per k < m",
            {"m": order.m, "given": len(init.derivs)},
        )
    caputo = caputo_derivative_numeric(f, order, mth_deriv)
    values = caputo.array + correction_series(init, order, f.times)
    return SampledFunction.from_array(f.step, values)


def oracle_quadrature(f: Evaluator, order: FracOrder, t: float, tol: float) -> float:
    """
    Brute-force J^alpha f(t) by graded-mesh quadrature of the convolution.

    The interval is split at t/2: the left half is graded toward 0, where f
    may be weakly singular; the right half is integrated in the distance
    v = t - tau with the kernel singularity absorbed by substitution.

    Args:
        f: Vectorised evaluator on (0, t]
        order: Integration order
        t: Evaluation point, > 0
        tol: Agreement target of successive refinements, > 0

    Returns:
        float: J^alpha f(t)

    Raises:
        NonConvergenceError: If refinement hits the cap
    """
    if not t > 0.0:
        raise DomainError("oracle evaluation needs t > 0", {"t": t})
    if not tol > 0.0:
        raise DomainError("tolerance must be positive", {"tol": tol})
    if order.alpha == 0.0:
        return float(np.asarray(f(np.array([t])), dtype=float)[0])
    alpha = order.alpha
    half = 0.5 * t

    def left(tau: np.ndarray) -> np.ndarray:
        return np.power(t - tau, alpha - 1.0) * f(tau)

    def right(v: np.ndarray) -> np.ndarray:
        return f(t - v)

    scale = gamma(alpha)
    total = graded_integral(left, 0.0, half, 0.5 * tol * scale, True, False)
    total += kernel_integral(right, alpha, half, 0.5 * tol * scale)
    return total / scale


def _as_samples(
    f: Union[PowerSum, Evaluator, None], horizon: float, n_intervals: int
) -> Optional[SampledFunction]:
    if f is None:
        return None
    return sample(f, horizon, n_intervals)


def convergence_order(
    operator: NumericOperator,
    f: Union[PowerSum, Evaluator],
    order: FracOrder,
    grid_sizes: Sequence[int],
    horizon: float = 1.0,
    derivative: Union[PowerSum, Evaluator, None] = None,
    oracle_tol: float = 1e-12,
) -> ConvergenceReport:
    """
    Measure the convergence order of a numeric operator.

    Power-sum inputs are compared at every node t > 0 against the symbolic
    result. Evaluator inputs are compared at the nodes of the coarsest grid
    against the quadrature oracle (J, or Caputo with ``derivative`` given).

    Args:
        operator: Which numeric operator to measure
        f: Input function
        order: Operator order
        grid_sizes: Interval counts, strictly increasing, at least three
        horizon: Grid end T
        derivative: Exact f^(m), used by the Caputo and RL paths
        oracle_tol: Tolerance of oracle references

    Returns:
        ConvergenceReport: Slope of log(max error) against log(step)

    Raises:
        DomainError: On invalid grid sizes or unsupported combinations
    """
    sizes = _grid_sizes(grid_sizes)
    symbolic_input = isinstance(f, PowerSum)
    if not symbolic_input:
        if operator is NumericOperator.RL:
            raise DomainError("the RL harness needs a power-sum input")
        if operator is NumericOperator.CAPUTO and derivative is None:
            raise DomainError("the Caputo harness needs the derivative of an evaluator")
        if any(n % sizes[0] for n in sizes):
            raise DomainError("oracle comparisons need nested grids")

    reference_values = None
    if not symbolic_input:
        coarse = horizon / sizes[0] * np.arange(1, sizes[0] + 1)
        if operator is NumericOperator.J:
            integrand, oracle_order = f, order
        else:
            integrand = (
                as_evaluator(derivative)
                if isinstance(derivative, PowerSum)
                else derivative
            )
            oracle_order = FracOrder.of(order.m - order.alpha)
        reference_values = np.array(
            [oracle_quadrature(integrand, oracle_order, t, oracle_tol) for t in coarse]
        )
    else:
        if operator is NumericOperator.J:
            exact = symbolic.rl_integral(f, order)
        elif operator is NumericOperator.CAPUTO:
            exact = symbolic.caputo_derivative(f, order)
        else:
            exact = symbolic.rl_derivative(f, order)

    steps, errors, scale = [], [], 0.0
    for n in sizes:
        samples = sample(f, horizon, n)
        mth = _as_samples(derivative, horizon, n)
        if operator is NumericOperator.J:
            result = rl_integral_numeric(samples, order)
        elif operator is NumericOperator.CAPUTO:
            result = caputo_derivative_numeric(samples, order, mth)
        else:
            init = InitialData(derivs=tuple(symbolic.initial_derivatives(f, order.m)))
            result = rl_derivative_numeric(samples, order, init, mth)
        if symbolic_input:
            computed = result.array[1:]
            expected = symbolic.evaluate_array(exact, result.times[1:])
        else:
            computed = result.array[(n // sizes[0]) :: (n // sizes[0])]
            expected = reference_values
        scale = max(scale, float(np.max(np.abs(expected))))
        steps.append(horizon / n)
        errors.append(float(np.max(np.abs(computed - expected))))

    report = _fit_order(steps, errors, scale)
    logger.info("%s order %.3f over N=%s", operator.value, report.order, sizes)
    return report


def semigroup_rate(first: FracOrder, second: FracOrder) -> float:
    """Rate the discrete semigroup defect of J^a_h J^b_h is held to."""
    return min(SEMIGROUP_RATE_CAP, first.alpha + second.alpha)


def semigroup_order(
    f: Union[PowerSum, Evaluator],
    first: FracOrder,
    second: FracOrder,
    grid_sizes: Sequence[int],
    horizon: float = 1.0,
) -> ConvergenceReport:
    """
    Measure how fast max |J^a_h J^b_h f - J^(a+b)_h f| vanishes with the step.

    The product-trapezoidal rule satisfies the semigroup law only in the
    limit; see ``semigroup_rate`` for the order it is held to.

    Args:
        f: Input function, bounded at 0
        first: Outer order a
        second: Inner order b
        grid_sizes: Interval counts, strictly increasing, at least three
        horizon: Grid end T

    Returns:
        ConvergenceReport: Slope of log(max defect) against log(step)
    """
    sizes = _grid_sizes(grid_sizes)
    combined = FracOrder.of(first.alpha + second.alpha)
    steps, errors, scale = [], [], 0.0
    for n in sizes:
        samples = sample(f, horizon, n)
        stepwise = rl_integral_numeric(rl_integral_numeric(samples, second), first)
        joint = rl_integral_numeric(samples, combined)
        scale = max(scale, float(np.max(np.abs(joint.array))))
        steps.append(horizon / n)
        errors.append(float(np.max(np.abs(stepwise.array - joint.array))))
    report = _fit_order(steps, errors, scale)
    logger.info(
        "semigroup defect order %.3f for a=%s b=%s over N=%s", report.order, first, second, sizes
    )
    return report


def _grid_sizes(grid_sizes: Sequence[int]) -> List[int]:
    sizes = list(grid_sizes)
    if len(sizes) < 3 or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise DomainError(
            "grid sizes must be strictly increasing with at least 3 entries",
            {"grid_sizes": sizes},
        )
    return sizes


def _fit_order(steps: List[float], errors: List[float], scale: float) -> ConvergenceReport:
    """Least-squares slope of log(error) against log(step)."""
    floor = 1e-12 * max(1.0, scale)
    degenerate = all(e < floor for e in errors)
    safe = np.maximum(np.asarray(errors), np.finfo(float).tiny)
    slope = float(np.polyfit(np.log(steps), np.log(safe), 1)[0])
    if degenerate:
        logger.warning("convergence fit is degenerate: errors at rounding floor %s", errors)
    return ConvergenceReport(order=slope, steps=steps, errors=errors, degenerate=degenerate)


def to_csv(f: SampledFunction) -> str:
    """
    Render samples as CSV with header ``t,value``.

    Args:
        f: Samples

    Returns:
        str: CSV text, 17 significant digits
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["t", "value"])
    for t, value in zip(f.times, f.values):
        writer.writerow([f"{t:.17g}", f"{value:.17g}"])
    return buffer.getvalue()


def from_csv(text: str) -> SampledFunction:
    """
    Parse ``t,value`` CSV into samples on a uniform grid.

    Args:
        text: CSV text in grid order starting at t = 0

    Returns:
        SampledFunction: The samples

    Raises:
        DomainError: On a wrong header or non-uniform spacing
    """
    rows = list(csv.reader(io.StringIO(text)))
    rows = [row for row in rows if row]
    if not rows or [cell.strip() for cell in rows[0]] != ["t", "value"]:
        raise DomainError("sampled CSV must start with the header 't,value'")
    try:
        times = np.array([float(row[0]) for row in rows[1:]])
        values = np.array([float(row[1]) for row in rows[1:]])
    except (IndexError, ValueError) as exc:
        raise DomainError(f"malformed sampled CSV: {exc}") from exc
    if len(times) < 3:
        raise DomainError("sampled CSV needs at least 3 rows")
    step = (times[-1] - times[0]) / (len(times) - 1)
    if times[0] != 0.0 or not step > 0.0:
        raise DomainError("sampled CSV grid must start at t = 0 and increase")
    expected = step * np.arange(len(times))
    if np.max(np.abs(times - expected)) > GRID_SPACING_TOL * step:
        raise DomainError("sampled CSV grid is not uniform")
    return SampledFunction.from_array(step, values)
