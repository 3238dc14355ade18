"""
Sampled-function schemas.

This module contains the grid representation of causal functions used by the
numeric operators and the initial data that accompanies them.
"""

import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class SampledFunction(BaseModel):
    """
    Schema for a causal function sampled on a uniform grid over [0, T].

    ``values[j] = f(j * step)`` for ``j = 0..N``. Values must be finite; the
    only exception is a NaN at node 0, the not-a-value marker of outputs that
    are unbounded at 0+.
    """

    model_config = ConfigDict(frozen=True)

    step: float = Field(..., gt=0.0, description="Grid spacing (time units)")
    values: Tuple[float, ...] = Field(..., description="Samples at j * step")

    @field_validator("values")
    @classmethod
    def validate_values(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        """Require N >= 2 and finite samples (NaN allowed at node 0 only)."""
        if len(v) < 3:
            raise ValueError("a sampled function needs N >= 2 intervals")
        for j, value in enumerate(v):
            if math.isnan(value) and j == 0:
                continue
            if not math.isfinite(value):
                raise ValueError(f"sample {j} is not finite")
        return v

    @model_validator(mode="after")
    def validate_step(self) -> "SampledFunction":
        """Reject non-finite spacing."""
        if not math.isfinite(self.step):
            raise ValueError("step must be finite")
        return self

    @classmethod
    def from_array(cls, step: float, values: np.ndarray) -> "SampledFunction":
        """Build from a numpy array of samples."""
        return cls(step=float(step), values=tuple(float(x) for x in values))

    @property
    def n_intervals(self) -> int:
        """Number of grid intervals N."""
        return len(self.values) - 1

    @property
    def horizon(self) -> float:
        """Right end T = N * step."""
        return self.n_intervals * self.step

    @property
    def times(self) -> np.ndarray:
        """Grid nodes j * step."""
        return self.step * np.arange(len(self.values), dtype=float)

    @property
    def array(self) -> np.ndarray:
        """Samples as a float array."""
        return np.asarray(self.values, dtype=float)


class InitialData(BaseModel):
    """Schema for the initial values f^(k)(0+), k = 0..m-1."""

    model_config = ConfigDict(frozen=True)

    derivs: Tuple[float, ...] = Field(default=(), description="f^(k)(0+) by k")

    @field_validator("derivs")
    @classmethod
    def validate_finite(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        """Initial values are bounded by definition."""
        if not all(math.isfinite(x) for x in v):
            raise ValueError("initial values must be finite")
        return v
