import math

import pytest
from pydantic import ValidationError

from app.exceptions import DomainError, NotLiouvilleClassError
from app.schemas.liouville import FunctionClass, LiouvilleTerm
from app.schemas.power_sum import FracOrder, PowerSum
from app.services import liouville
from app.services.expression import parse
from app.tests.conftest import SQRT_PI


class TestLiouvilleTerm:
    def test_render(self):
        assert LiouvilleTerm.exponential(2.0).render() == "exp(2*t)"
        assert liouville.reflect(LiouvilleTerm.exponential(2.0)).render() == "exp(-2*t)"
        assert LiouvilleTerm.power_of_abs(2.0, 3.0).render() == "3*abs(t)^-2"

    def test_rendered_text_parses_back(self):
        exponential = liouville.reflect(LiouvilleTerm.exponential(2.0, 3.0))
        assert parse(exponential.render()).parsed == exponential
        power = liouville.reflect(LiouvilleTerm.power_of_abs(1.5))
        assert parse(power.render()).parsed == LiouvilleTerm.power_of_abs(1.5)

    def test_parameters_validated(self):
        with pytest.raises(ValidationError):
            LiouvilleTerm.exponential(-1.0)
        with pytest.raises(ValidationError):
            LiouvilleTerm.power_of_abs(0.0)

    def test_reflection_is_involution(self):
        term = LiouvilleTerm.power_of_abs(1.5, -2.0)
        assert liouville.reflect(liouville.reflect(term)) == term


class TestLiouvilleOperators:
    def test_exponential_integral(self, half):
        result = liouville.liouville_integral(LiouvilleTerm.exponential(2.0), half)
        assert result.coeff == pytest.approx(2.0**-0.5, rel=1e-15)
        assert result.rate == 2.0

    def test_power_integral(self, half):
        result = liouville.liouville_integral(LiouvilleTerm.power_of_abs(2.0), half)
        assert result.delta == 1.5
        assert result.coeff == pytest.approx(SQRT_PI / 2.0, rel=1e-14)

    def test_power_below_order(self, half):
        with pytest.raises(NotLiouvilleClassError, match="decay power"):
            liouville.liouville_integral(LiouvilleTerm.power_of_abs(0.5), half)

    def test_power_derivative(self, half):
        result = liouville.liouville_derivative(LiouvilleTerm.power_of_abs(1.0), half)
        assert result.delta == 1.5
        assert result.coeff == pytest.approx(SQRT_PI / 2.0, rel=1e-14)

    def test_inverse_pair(self):
        order = FracOrder.of(1.3)
        term = LiouvilleTerm.power_of_abs(2.2, -1.5)
        back = liouville.liouville_derivative(liouville.liouville_integral(term, order), order)
        assert back.coeff == pytest.approx(term.coeff, rel=1e-13)
        assert back.delta == pytest.approx(term.delta, abs=1e-12)

    def test_reflected_terms_rejected(self, half):
        mirrored = liouville.reflect(LiouvilleTerm.exponential(1.0))
        with pytest.raises(DomainError):
            liouville.liouville_integral(mirrored, half)
        with pytest.raises(DomainError):
            liouville.liouville_derivative(mirrored, half)

    def test_classical_derivative_sign(self):
        mirrored = liouville.reflect(LiouvilleTerm.exponential(3.0))
        assert liouville.classical_derivative(mirrored, 1).coeff == -3.0
        assert liouville.classical_derivative(mirrored, 2).coeff == 9.0
        power = LiouvilleTerm.power_of_abs(2.0)
        assert liouville.classical_derivative(power, 1).coeff == pytest.approx(2.0)


class TestWeylIntegral:
    def test_decaying_exponential(self, half):
        decay = liouville.reflect(LiouvilleTerm.exponential(2.0))
        result = liouville.weyl_integral(decay, half)
        assert result.reflected
        assert liouville.evaluate_liouville(result, 1.0) == pytest.approx(
            2.0**-0.5 * math.exp(-2.0), rel=1e-14
        )

    def test_needs_reflected_term(self, half):
        with pytest.raises(DomainError):
            liouville.weyl_integral(LiouvilleTerm.exponential(2.0), half)


class TestEvaluation:
    def test_power_half_lines(self):
        term = LiouvilleTerm.power_of_abs(2.0)
        assert liouville.evaluate_liouville(term, -2.0) == 0.25
        assert liouville.evaluate_liouville(liouville.reflect(term), 2.0) == 0.25
        with pytest.raises(DomainError):
            liouville.evaluate_liouville(term, 1.0)


class TestClassify:
    @pytest.mark.parametrize(
        "term, expected",
        [
            (PowerSum.monomial(-0.5), FunctionClass.RIEMANN),
            (PowerSum.monomial(-1.5), FunctionClass.NEITHER),
            (LiouvilleTerm.power_of_abs(2.0), FunctionClass.LIOUVILLE),
            (LiouvilleTerm.power_of_abs(0.3), FunctionClass.NEITHER),
            (LiouvilleTerm.exponential(0.1), FunctionClass.LIOUVILLE),
        ],
    )
    def test_classes(self, half, term, expected):
        assert liouville.classify(term, half) is expected

    def test_single_power_term(self, half):
        term = PowerSum.monomial(-2.0).terms[0]
        assert liouville.classify(term, half) is FunctionClass.NEITHER


class TestJumpIdentity:
    def test_holds(self):
        f = PowerSum.from_pairs([(1.0, 0.0), (1.0, 0.5)])
        result = liouville.causal_jump_identity_check(f, FracOrder.of(0.3), 0.7)
        assert result.ok
        assert result.lhs == pytest.approx(result.rhs, rel=1e-12)

    def test_order_range(self, one_plus_t):
        with pytest.raises(DomainError):
            liouville.causal_jump_identity_check(one_plus_t, FracOrder.of(1.5), 1.0)


class TestTruncatedQuadrature:
    def test_liouville_exponential(self, half):
        value, tail = liouville.liouville_integral_numeric(
            LiouvilleTerm.exponential(1.0), half, 0.0, 20.0
        )
        assert value == pytest.approx(1.0, abs=1e-6)
        assert tail < 1e-8

    def test_weyl_power_within_tail(self, half):
        power = liouville.reflect(LiouvilleTerm.power_of_abs(2.0))
        value, tail = liouville.weyl_integral_numeric(power, half, 1.0, 1000.0)
        exact = liouville.evaluate_liouville(liouville.weyl_integral(power, half), 1.0)
        assert abs(value - exact) <= tail + 1e-8
        assert tail > 0.0

    def test_truncation_must_cover_point(self, half):
        with pytest.raises(DomainError):
            liouville.liouville_integral_numeric(LiouvilleTerm.exponential(1.0), half, -5.0, 3.0)
