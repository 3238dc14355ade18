import math

import pytest

from app.exceptions import DomainError, PoleError
from app.services.special_functions import (
    beta,
    falling_factorial,
    gamma,
    gamma_ratio,
    log_gamma,
    reciprocal_gamma,
    regularized_upper_gamma,
)


class TestGamma:
    def test_half_integer(self):
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    def test_negative_non_integer(self):
        assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-14)

    @pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -7.0])
    def test_poles_raise(self, x):
        with pytest.raises(PoleError):
            gamma(x)

    def test_overflow(self):
        with pytest.raises(OverflowError):
            gamma(200.0)

    def test_nan_rejected(self):
        with pytest.raises(DomainError):
            gamma(float("nan"))


class TestReciprocalGamma:
    @pytest.mark.parametrize("x", [0.0, -1.0, -3.0])
    def test_zero_at_poles(self, x):
        assert reciprocal_gamma(x) == 0.0

    def test_regular_point(self):
        assert reciprocal_gamma(3.0) == pytest.approx(0.5, rel=1e-15)


class TestGammaRatio:
    def test_small_arguments(self):
        assert gamma_ratio(2.0, 2.5) == pytest.approx(4.0 / (3.0 * math.sqrt(math.pi)), rel=1e-14)

    def test_large_arguments_do_not_overflow(self):
        expected = math.exp(math.lgamma(200.5) - math.lgamma(200.0))
        assert gamma_ratio(200.5, 200.0) == pytest.approx(expected, rel=1e-12)

    def test_pole_in_denominator_vanishes(self):
        assert gamma_ratio(3.0, -1.0) == 0.0

    def test_pole_in_numerator_raises(self):
        with pytest.raises(PoleError):
            gamma_ratio(-2.0, 1.5)


class TestLogGamma:
    def test_sign_tracked(self):
        value, sign = log_gamma(-0.5)
        assert sign == -1.0
        assert value == pytest.approx(math.log(2.0 * math.sqrt(math.pi)), rel=1e-14)


class TestBeta:
    def test_value(self):
        assert beta(2.0, 3.0) == pytest.approx(1.0 / 12.0, rel=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            beta(0.0, 1.0)


class TestFallingFactorial:
    def test_integer(self):
        assert falling_factorial(5.0, 3) == 60.0

    def test_fractional(self):
        assert falling_factorial(0.5, 2) == pytest.approx(-0.25)

    def test_empty_product(self):
        assert falling_factorial(0.3, 0) == 1.0


class TestRegularizedUpperGamma:
    def test_exponential_case(self):
        assert regularized_upper_gamma(1.0, 2.0) == pytest.approx(math.exp(-2.0), rel=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            regularized_upper_gamma(0.0, 1.0)
