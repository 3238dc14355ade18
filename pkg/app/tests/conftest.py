"""Shared fixtures for the engine tests."""

import math

import numpy as np
import pytest

from app.schemas.power_sum import FracOrder, PowerSum


SQRT_PI = math.sqrt(math.pi)


@pytest.fixture
def half() -> FracOrder:
    return FracOrder.of(0.5)


@pytest.fixture
def one_plus_t() -> PowerSum:
    return PowerSum.from_pairs([(1.0, 0.0), (1.0, 1.0)])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)
