import math

import pytest

from app.exceptions import DomainError, NotCaputoAdmissibleError, NotIntegrableError
from app.schemas.power_sum import DerivativeKind, FracOrder, PowerSum
from app.services import symbolic
from app.tests.conftest import SQRT_PI


class TestRiemannLiouvilleIntegral:
    def test_power_rule(self, half):
        result = symbolic.rl_integral(PowerSum.monomial(1.0), half)
        assert result.coefficient_of(1.5) == pytest.approx(4.0 / (3.0 * SQRT_PI), rel=1e-14)

    def test_zero_order_is_identity(self, one_plus_t):
        assert symbolic.rl_integral(one_plus_t, FracOrder.of(0.0)) == one_plus_t

    def test_integer_order_is_repeated_integral(self):
        result = symbolic.rl_integral(PowerSum.constant(1.0), FracOrder.of(2.0))
        assert result == PowerSum.monomial(2.0, 0.5)

    def test_semigroup(self):
        f = PowerSum.from_pairs([(2.0, 0.5), (-1.0, 1.7)])
        stepwise = symbolic.rl_integral(
            symbolic.rl_integral(f, FracOrder.of(0.4)), FracOrder.of(0.3)
        )
        joint = symbolic.rl_integral(f, FracOrder.of(0.7))
        assert symbolic.is_close(stepwise, joint)

    def test_not_integrable(self, half):
        with pytest.raises(NotIntegrableError):
            symbolic.rl_integral(PowerSum.monomial(-1.0), half)

    def test_kernel(self):
        kernel = symbolic.phi_kernel(0.5)
        assert kernel.coefficient_of(-0.5) == pytest.approx(1.0 / SQRT_PI, rel=1e-15)
        with pytest.raises(DomainError):
            symbolic.phi_kernel(0.0)


class TestRiemannLiouvilleDerivative:
    def test_half_derivative_of_sqrt(self, half):
        result = symbolic.rl_derivative(PowerSum.monomial(0.5), half)
        assert symbolic.evaluate(result, 1.0) == pytest.approx(SQRT_PI / 2.0, rel=1e-14)

    def test_constant_is_not_annihilated(self, half):
        result = symbolic.rl_derivative(PowerSum.constant(1.0), half)
        assert result.coefficient_of(-0.5) == pytest.approx(1.0 / SQRT_PI, rel=1e-14)

    def test_null_space_term_vanishes(self, half):
        assert symbolic.rl_derivative(PowerSum.monomial(-0.5), half).is_zero

    def test_integer_order_is_exact(self):
        result = symbolic.rl_derivative(PowerSum.monomial(-0.5), FracOrder.of(1.0))
        assert result == PowerSum.monomial(-1.5, -0.5)

    def test_left_inverse_of_integral(self, half):
        f = PowerSum.from_pairs([(1.0, -0.3), (2.0, 1.25)])
        back = symbolic.rl_derivative(symbolic.rl_integral(f, half), half)
        assert symbolic.is_close(back, f)

    def test_may_leave_riemann_class(self):
        result = symbolic.rl_derivative(PowerSum.monomial(0.2), FracOrder.of(1.5))
        assert not result.is_riemann_class


class TestCaputoDerivative:
    def test_constant_is_annihilated(self, half):
        assert symbolic.caputo_derivative(PowerSum.constant(3.0), half).is_zero

    def test_linear(self, half):
        result = symbolic.caputo_derivative(PowerSum.monomial(1.0), half)
        assert result.coefficient_of(0.5) == pytest.approx(2.0 / SQRT_PI, rel=1e-14)

    def test_inadmissible_input(self):
        with pytest.raises(NotCaputoAdmissibleError):
            symbolic.caputo_derivative(PowerSum.monomial(0.5), FracOrder.of(1.5))

    def test_admissibility(self):
        order = FracOrder.of(1.5)
        assert symbolic.is_caputo_admissible(PowerSum.from_pairs([(1.0, 0.0), (1.0, 1.2)]), order)
        assert not symbolic.is_caputo_admissible(PowerSum.monomial(0.5), order)

    def test_decomposition(self, half, one_plus_t):
        caputo_part, correction = symbolic.decompose_rl_caputo(one_plus_t, half)
        assert caputo_part.coefficient_of(0.5) == pytest.approx(2.0 / SQRT_PI, rel=1e-14)
        assert correction.coefficient_of(-0.5) == pytest.approx(1.0 / SQRT_PI, rel=1e-14)
        assert symbolic.is_close(
            caputo_part + correction, symbolic.rl_derivative(one_plus_t, half)
        )


class TestInitialData:
    def test_initial_derivatives(self):
        f = PowerSum.from_pairs([(1.0, 0.0), (2.0, 1.0), (1.0, 2.5)])
        assert symbolic.initial_derivatives(f, 2) == [1.0, 2.0]
        assert symbolic.taylor_polynomial(f, 2) == PowerSum.from_pairs([(1.0, 0.0), (2.0, 1.0)])

    def test_divergent_limit(self):
        with pytest.raises(DomainError):
            symbolic.limit_at_zero(PowerSum.monomial(-0.5))

    def test_limit_of_positive_powers(self):
        assert symbolic.limit_at_zero(PowerSum.monomial(0.5)) == 0.0


class TestNullSpace:
    def test_riemann_liouville_basis(self):
        basis = symbolic.null_space_basis(DerivativeKind.RL, FracOrder.of(1.5))
        assert [b.lowest_exponent for b in basis] == [0.5, -0.5]

    def test_caputo_basis(self):
        basis = symbolic.null_space_basis(DerivativeKind.CAPUTO, FracOrder.of(1.5))
        assert [b.lowest_exponent for b in basis] == [1.0, 0.0]

    def test_identity_has_none(self):
        with pytest.raises(DomainError):
            symbolic.null_space_basis(DerivativeKind.RL, FracOrder.of(0.0))


class TestEvaluation:
    def test_scalar(self):
        assert symbolic.evaluate(PowerSum.monomial(2.0, 2.0), 3.0) == 18.0

    def test_non_positive_point(self):
        with pytest.raises(DomainError):
            symbolic.evaluate(PowerSum.constant(1.0), 0.0)

    def test_close_and_gap(self):
        a = PowerSum.monomial(0.5, 1.0)
        b = PowerSum.monomial(0.5, 1.0 + 1e-13)
        assert symbolic.is_close(a, b)
        assert not symbolic.is_close(a, PowerSum.monomial(0.5, 1.01))
        assert not symbolic.is_close(a, a + PowerSum.constant(1.0))
        assert symbolic.max_relative_gap(a, b) < 1e-12


class TestOrderLimits:
    def test_errors_shrink(self):
        f = PowerSum.from_pairs([(1.0, 1.5), (0.5, 2.5)])
        table = symbolic.order_limit_errors(f, 1, (1e-2, 1e-3, 1e-4), (0.5, 1.0))
        for point in range(2):
            rl = [row[point][0] for row in table]
            caputo = [row[point][1] for row in table]
            assert rl[0] > rl[1] > rl[2]
            assert caputo[0] > caputo[1] > caputo[2]
            assert math.isfinite(rl[2])
