import math

import numpy as np
import pytest

from app.exceptions import DomainError, LengthError, UnsupportedOrderError
from app.schemas.power_sum import FracOrder, PowerSum
from app.schemas.sampled import InitialData, SampledFunction
from app.services import numeric
from app.tests.conftest import SQRT_PI


class TestSampling:
    def test_power_sum_uses_limit_at_zero(self, one_plus_t):
        samples = numeric.sample(one_plus_t, 1.0, 4)
        assert samples.values == pytest.approx((1.0, 1.25, 1.5, 1.75, 2.0))

    def test_singular_input_rejected(self):
        with pytest.raises(DomainError):
            numeric.sample(PowerSum.monomial(-0.5), 1.0, 8)

    def test_evaluator(self):
        samples = numeric.sample(np.exp, 2.0, 8)
        assert samples.step == 0.25
        assert samples.values[-1] == pytest.approx(math.exp(2.0))

    def test_nan_allowed_only_at_first_node(self):
        SampledFunction(step=0.5, values=(math.nan, 1.0, 2.0))
        with pytest.raises(ValueError):
            SampledFunction(step=0.5, values=(0.0, math.nan, 2.0))


class TestProductTrapezoid:
    def test_weights(self):
        c, a0 = numeric.product_trapezoid_weights(0.5, 4)
        assert c[0] == 1.0
        assert c[1] == pytest.approx(2.0**1.5 - 2.0, rel=1e-14)
        assert a0[0] == 0.0
        assert not c.flags.writeable

    def test_first_order_integral_of_one_is_exact(self):
        samples = numeric.sample(PowerSum.constant(1.0), 1.0, 100)
        result = numeric.rl_integral_numeric(samples, FracOrder.of(1.0))
        assert result.array == pytest.approx(samples.times, rel=1e-12, abs=1e-15)

    def test_linear_input_is_exact(self, half):
        samples = numeric.sample(PowerSum.monomial(1.0), 1.0, 1024)
        value = numeric.rl_integral_numeric(samples, half).values[-1]
        assert abs(value - 4.0 / (3.0 * SQRT_PI)) <= 1e-4

    def test_exponential(self, half):
        samples = numeric.sample(np.exp, 1.0, 1024)
        value = numeric.rl_integral_numeric(samples, half).values[-1]
        assert value == pytest.approx(math.e * math.erf(1.0), abs=1e-5)

    def test_zero_order_is_identity(self, one_plus_t):
        samples = numeric.sample(one_plus_t, 1.0, 8)
        assert numeric.rl_integral_numeric(samples, FracOrder.of(0.0)) == samples


class TestDerivatives:
    def test_reconstruction_is_exact_for_quadratics(self):
        samples = numeric.sample(PowerSum.monomial(2.0), 1.0, 64)
        first = numeric.reconstruct_derivative(samples, 1)
        second = numeric.reconstruct_derivative(samples, 2)
        assert first == pytest.approx(2.0 * samples.times, abs=1e-10)
        assert second == pytest.approx(np.full(65, 2.0), abs=1e-8)

    def test_reconstruction_limits(self):
        samples = numeric.sample(PowerSum.monomial(2.0), 1.0, 64)
        with pytest.raises(UnsupportedOrderError):
            numeric.reconstruct_derivative(samples, 3)
        with pytest.raises(DomainError):
            numeric.reconstruct_derivative(numeric.sample(PowerSum.monomial(2.0), 1.0, 3), 1)

    def test_caputo_of_linear(self, half):
        samples = numeric.sample(PowerSum.monomial(1.0), 1.0, 1024)
        value = numeric.caputo_derivative_numeric(samples, half).values[-1]
        assert abs(value - 2.0 / SQRT_PI) <= 2e-3

    def test_caputo_needs_derivative_above_two(self):
        samples = numeric.sample(PowerSum.monomial(3.0), 1.0, 16)
        with pytest.raises(UnsupportedOrderError):
            numeric.caputo_derivative_numeric(samples, FracOrder.of(2.5))

    def test_caputo_grid_mismatch(self, half):
        samples = numeric.sample(PowerSum.monomial(1.0), 1.0, 16)
        other = numeric.sample(PowerSum.constant(1.0), 1.0, 8)
        with pytest.raises(LengthError):
            numeric.caputo_derivative_numeric(samples, half, other)

    def test_riemann_liouville(self, half, one_plus_t):
        samples = numeric.sample(one_plus_t, 1.0, 1024)
        result = numeric.rl_derivative_numeric(samples, half, InitialData(derivs=(1.0,)))
        assert math.isnan(result.values[0])
        assert result.values[-1] == pytest.approx(1.6925687506, abs=1e-3)

    def test_riemann_liouville_init_length(self, half, one_plus_t):
        samples = numeric.sample(one_plus_t, 1.0, 16)
        with pytest.raises(LengthError):
            numeric.rl_derivative_numeric(samples, half, InitialData(derivs=(1.0, 0.0)))


class TestOracle:
    def test_constant(self, half):
        value = numeric.oracle_quadrature(np.ones_like, half, 1.0, 1e-12)
        assert value == pytest.approx(2.0 / SQRT_PI, abs=1e-10)

    def test_singular_input(self, half):
        value = numeric.oracle_quadrature(lambda t: 1.0 / np.sqrt(t), half, 1.0, 1e-10)
        assert value == pytest.approx(SQRT_PI, abs=1e-7)

    @pytest.mark.parametrize("alpha", [0.25, 0.9, 1.5])
    def test_agrees_with_integral_at_every_node(self, alpha):
        n = 32
        order = FracOrder.of(alpha)
        samples = numeric.sample(lambda t: np.exp(-t), 1.0, n)
        result = numeric.rl_integral_numeric(samples, order).array
        worst = max(
            abs(result[j] - numeric.oracle_quadrature(lambda t: np.exp(-t), order, j / n, 1e-12))
            for j in range(1, n + 1)
        )
        assert worst <= 5.0 * (1.0 / n) ** 1.8

    def test_bad_point(self, half):
        with pytest.raises(DomainError):
            numeric.oracle_quadrature(np.ones_like, half, 0.0, 1e-10)


class TestConvergence:
    def test_integral_is_second_order(self, half):
        report = numeric.convergence_order(
            numeric.NumericOperator.J, PowerSum.monomial(2.0), half, (64, 128, 256, 512)
        )
        assert 1.8 <= report.order <= 2.2
        assert not report.degenerate

    def test_caputo_with_exact_derivative(self, half):
        report = numeric.convergence_order(
            numeric.NumericOperator.CAPUTO,
            PowerSum.monomial(3.0),
            half,
            (64, 128, 256, 512),
            derivative=PowerSum.monomial(2.0, 3.0),
        )
        assert 1.8 <= report.order <= 2.2

    def test_exact_input_is_degenerate(self, half):
        report = numeric.convergence_order(
            numeric.NumericOperator.J, PowerSum.constant(1.0), half, (16, 32, 64)
        )
        assert report.degenerate

    def test_evaluator_against_oracle(self, half):
        report = numeric.convergence_order(
            numeric.NumericOperator.J, lambda t: np.exp(-t), half, (16, 32, 64, 128)
        )
        assert 1.7 <= report.order <= 2.3

    def test_grid_validation(self, half):
        with pytest.raises(DomainError):
            numeric.convergence_order(
                numeric.NumericOperator.J, PowerSum.constant(1.0), half, (16, 32)
            )
        with pytest.raises(DomainError):
            numeric.convergence_order(
                numeric.NumericOperator.RL, np.exp, half, (16, 32, 64)
            )


class TestCsv:
    def test_written_form(self):
        samples = numeric.sample(PowerSum.monomial(1.0), 1.0, 2)
        assert numeric.to_csv(samples) == "t,value\n0,0\n0.5,0.5\n1,1\n"

    def test_read(self):
        samples = numeric.from_csv("t,value\n0,1\n0.25,2\n0.5,3\n")
        assert samples.step == 0.25
        assert samples.values == (1.0, 2.0, 3.0)

    def test_non_uniform_grid(self):
        with pytest.raises(DomainError):
            numeric.from_csv("t,value\n0,1\n0.2,2\n0.5,3\n")

    def test_wrong_header(self):
        with pytest.raises(DomainError):
            numeric.from_csv("x,y\n0,1\n1,2\n2,3\n")


class TestNumericSemigroup:
    @pytest.mark.parametrize(
        "a, b", [(0.25, 0.25), (0.4, 0.7), (0.5, 0.5), (0.9, 0.9), (1.2, 1.3)]
    )
    def test_defect_rate(self, a, b):
        first, second = FracOrder.of(a), FracOrder.of(b)
        report = numeric.semigroup_order(np.exp, first, second, (128, 256, 512, 1024))
        assert report.order >= 0.9 * numeric.semigroup_rate(first, second)
        assert report.errors[-1] < report.errors[0]

    def test_rate_is_capped(self):
        assert numeric.semigroup_rate(FracOrder.of(0.4), FracOrder.of(0.7)) == pytest.approx(1.1)
        assert numeric.semigroup_rate(FracOrder.of(1.2), FracOrder.of(1.3)) == 1.5


class TestNumericLinearity:
    N = 64

    def _inputs(self):
        f = numeric.sample(np.exp, 1.0, self.N)
        g = numeric.sample(np.cos, 1.0, self.N)
        combined = SampledFunction.from_array(f.step, 2.0 * f.array - 3.0 * g.array)
        return f, g, combined

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.5])
    def test_integral(self, alpha):
        f, g, combined = self._inputs()
        order = FracOrder.of(alpha)
        lhs = numeric.rl_integral_numeric(combined, order).array
        rhs = (
            2.0 * numeric.rl_integral_numeric(f, order).array
            - 3.0 * numeric.rl_integral_numeric(g, order).array
        )
        assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_caputo(self, half):
        f, g, combined = self._inputs()
        lhs = numeric.caputo_derivative_numeric(combined, half).array
        rhs = (
            2.0 * numeric.caputo_derivative_numeric(f, half).array
            - 3.0 * numeric.caputo_derivative_numeric(g, half).array
        )
        assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_riemann_liouville(self, half):
        f, g, combined = self._inputs()
        lhs = numeric.rl_derivative_numeric(combined, half, InitialData(derivs=(-1.0,))).array
        rhs = 2.0 * numeric.rl_derivative_numeric(
            f, half, InitialData(derivs=(1.0,))
        ).array - 3.0 * numeric.rl_derivative_numeric(g, half, InitialData(derivs=(1.0,))).array
        assert np.max(np.abs(lhs[1:] - rhs[1:])) <= 1e-12


class TestNumericIdentities:
    @pytest.mark.parametrize("n", [8, 64, 1024])
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.5, 1.9])
    def test_caputo_kills_constants(self, n, alpha):
        samples = numeric.sample(PowerSum.constant(2.5), 1.0, n)
        result = numeric.caputo_derivative_numeric(samples, FracOrder.of(alpha))
        assert np.max(np.abs(result.array)) <= 1e-12

    def test_correction_is_the_only_difference(self, half, one_plus_t):
        samples = numeric.sample(one_plus_t, 1.0, 256)
        rl = numeric.rl_derivative_numeric(samples, half, InitialData(derivs=(1.0,)))
        caputo = numeric.caputo_derivative_numeric(samples, half)
        times = samples.times[1:]
        gap = rl.array[1:] - caputo.array[1:]
        assert np.max(np.abs(gap - 1.0 / (SQRT_PI * np.sqrt(times)))) <= 1e-10

    def test_riemann_liouville_of_one(self, half):
        samples = numeric.sample(PowerSum.constant(1.0), 1.0, 128)
        result = numeric.rl_derivative_numeric(samples, half, InitialData(derivs=(1.0,)))
        times = samples.times[1:]
        expected = 1.0 / (math.gamma(0.5) * np.sqrt(times))
        assert np.max(np.abs(result.array[1:] - expected)) <= 1e-10
        assert math.isnan(result.values[0])

    def test_integer_order_with_exact_derivative(self):
        samples = numeric.sample(PowerSum.monomial(2.0), 1.0, 32)
        derivative = numeric.sample(PowerSum.monomial(1.0, 2.0), 1.0, 32)
        result = numeric.caputo_derivative_numeric(samples, FracOrder.of(1.0), derivative)
        assert result.array == pytest.approx(2.0 * samples.times, abs=0.0)
