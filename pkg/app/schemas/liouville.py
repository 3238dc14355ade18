"""
Liouville-class schemas.

This module contains the single-term algebra of the Liouville (lower limit
-infinity) and Weyl (upper limit +infinity) operators.
"""

import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.schemas.power_sum import format_decimal


class LiouvilleVariant(str, Enum):
    """Closed-form families the Liouville operators act on."""

    POWER_OF_ABS = "PowerOfAbs"
    EXPONENTIAL = "Exponential"


class FunctionClass(str, Enum):
    """Integrability classes of a term."""

    RIEMANN = "Riemann"
    LIOUVILLE = "Liouville"
    NEITHER = "Neither"


class LiouvilleTerm(BaseModel):
    """
    Schema for ``coeff * |t|^-delta`` on t < 0 or ``coeff * exp(rate * t)``.

    With ``reflected`` set the term is the mirror image g(t') = f(-t'):
    ``coeff * t'^-delta`` on t' > 0 or ``coeff * exp(-rate * t')``, which is
    the form the Weyl integral acts on.
    """

    model_config = ConfigDict(frozen=True)

    variant: LiouvilleVariant = Field(..., description="Closed-form family")
    coeff: float = Field(default=1.0, description="Coefficient")
    delta: Optional[float] = Field(default=None, description="Decay power (PowerOfAbs)")
    rate: Optional[float] = Field(default=None, description="Growth rate c (Exponential)")
    reflected: bool = Field(default=False, description="Mirror image t' = -t")

    @model_validator(mode="after")
    def validate_variant(self) -> "LiouvilleTerm":
        """Each variant carries exactly its own positive parameter."""
        if not math.isfinite(self.coeff):
            raise ValueError("coeff must be finite")
        if self.variant is LiouvilleVariant.POWER_OF_ABS:
            if self.delta is None or self.rate is not None:
                raise ValueError("PowerOfAbs needs delta and no rate")
            if not (math.isfinite(self.delta) and self.delta > 0.0):
                raise ValueError("PowerOfAbs requires delta > 0")
        else:
            if self.rate is None or self.delta is not None:
                raise ValueError("Exponential needs rate and no delta")
            if not (math.isfinite(self.rate) and self.rate > 0.0):
                raise ValueError("Exponential requires rate c > 0")
        return self

    @classmethod
    def power_of_abs(cls, delta: float, coeff: float = 1.0) -> "LiouvilleTerm":
        """Build ``coeff * |t|^-delta``."""
        return cls(variant=LiouvilleVariant.POWER_OF_ABS, coeff=coeff, delta=delta)

    @classmethod
    def exponential(cls, rate: float, coeff: float = 1.0) -> "LiouvilleTerm":
        """Build ``coeff * exp(rate * t)``."""
        return cls(variant=LiouvilleVariant.EXPONENTIAL, coeff=coeff, rate=rate)

    def render(self) -> str:
        """
        Text form ``c*abs(t)^-d`` or ``c*exp(r*t)``.

        Reflected exponentials render with a negative rate and parse back
        reflected. Reflected powers render like unreflected ones, so that
        round-trip is one-way: the parsed term is unreflected and ``--weyl``
        selects the mirrored reading on the command line.
        """
        prefix = "" if self.coeff == 1.0 else f"{format_decimal(self.coeff)}*"
        if self.variant is LiouvilleVariant.POWER_OF_ABS:
            return f"{prefix}abs(t)^{format_decimal(-self.delta)}"  # type: ignore[operator]
        rate = -self.rate if self.reflected else self.rate  # type: ignore[operator]
        return f"{prefix}exp({format_decimal(rate)}*t)"

    def __str__(self) -> str:
        return self.render()
