"""
Power-sum schemas.

This module contains the closed symbolic algebra the exact operators act on:
single power terms, finite power sums in canonical form, and fractional
orders bundled with their integer ceiling.
"""

import math
from enum import Enum
from typing import Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.config import settings

# Relative size below which a merged coefficient counts as cancelled.
CANCELLATION_TOL = 1e-14


def snap_exponent(exponent: float) -> float:
    """Round an exponent to the nearest integer when it is within tolerance."""
    nearest = round(exponent)
    if abs(exponent - nearest) < settings.EXPONENT_TOL:
        return float(nearest)
    return exponent


def format_decimal(value: float) -> str:
    """Render a float as a round-trip exact decimal literal."""
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def merge_pairs(
    pairs: Iterable[Tuple[float, float]], reverse: bool = False
) -> List[Tuple[float, float]]:
    """
    Merge (coeff, exponent) pairs into canonical order.

    Exponents closer than the exponent tolerance are merged, zero and
    cancelled coefficients are dropped.

    Args:
        pairs: Raw (coeff, exponent) pairs
        reverse: Sort exponents decreasing instead of increasing

    Returns:
        List[Tuple[float, float]]: Canonical (coeff, exponent) pairs
    """
    items = sorted(
        ((float(c), snap_exponent(float(e))) for c, e in pairs),
        key=lambda p: p[1],
    )
    # Each group is [coeff_sum, exponent, largest |coeff| seen]
    groups: List[List[float]] = []
    for coeff, exponent in items:
        if groups and abs(exponent - groups[-1][1]) < settings.EXPONENT_TOL:
            groups[-1][0] += coeff
            groups[-1][2] = max(groups[-1][2], abs(coeff))
        else:
            groups.append([coeff, exponent, abs(coeff)])

    result = [
        (c, e)
        for c, e, scale in groups
        if c != 0.0 and abs(c) > CANCELLATION_TOL * scale
    ]
    if reverse:
        result.reverse()
    return result


class PowerTerm(BaseModel):
    """Schema for a single term ``coeff * t^exponent``."""

    model_config = ConfigDict(frozen=True)

    coeff: float = Field(..., description="Coefficient (dimensionless)")
    exponent: float = Field(..., description="Power of t")

    @field_validator("coeff", "exponent")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        """Reject infinities and NaN."""
        if not math.isfinite(v):
            raise ValueError("term fields must be finite")
        return v

    def render(self) -> str:
        """Text form ``c*t^g``."""
        return f"{format_decimal(self.coeff)}*t^{format_decimal(self.exponent)}"


class PowerSum(BaseModel):
    """
    Schema for a finite linear combination of real powers of t.

    Construction always canonicalises: exponents strictly increasing, equal
    exponents merged, zero coefficients dropped. The empty sum is the zero
    function.
    """

    model_config = ConfigDict(frozen=True)

    terms: Tuple[PowerTerm, ...] = Field(default=(), description="Canonical terms")

    @model_validator(mode="before")
    @classmethod
    def canonicalize(cls, data):
        """Sort, merge and prune the incoming terms."""
        if not isinstance(data, dict) or "terms" not in data:
            return data
        raw = []
        for term in data["terms"]:
            if isinstance(term, PowerTerm):
                raw.append((term.coeff, term.exponent))
            elif isinstance(term, dict):
                raw.append((term["coeff"], term["exponent"]))
            else:
                coeff, exponent = term
                raw.append((coeff, exponent))
        for coeff, exponent in raw:
            if not (math.isfinite(coeff) and math.isfinite(exponent)):
                raise ValueError("term fields must be finite")
        return {
            **data,
            "terms": tuple(
                PowerTerm(coeff=c, exponent=e) for c, e in merge_pairs(raw)
            ),
        }

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[float, float]]) -> "PowerSum":
        """Build a canonical sum from (coeff, exponent) pairs."""
        return cls(terms=tuple(pairs))

    @classmethod
    def monomial(cls, exponent: float, coeff: float = 1.0) -> "PowerSum":
        """Build ``coeff * t^exponent``."""
        return cls.from_pairs([(coeff, exponent)])

    @classmethod
    def constant(cls, value: float) -> "PowerSum":
        """Build the constant function."""
        return cls.from_pairs([(value, 0.0)])

    @classmethod
    def zero(cls) -> "PowerSum":
        """Build the zero function."""
        return cls(terms=())

    @property
    def pairs(self) -> List[Tuple[float, float]]:
        """Terms as (coeff, exponent) tuples."""
        return [(t.coeff, t.exponent) for t in self.terms]

    @property
    def is_zero(self) -> bool:
        """Whether this is the zero function."""
        return not self.terms

    @property
    def is_riemann_class(self) -> bool:
        """All exponents > -1, i.e. locally integrable at 0+."""
        return all(t.exponent > -1.0 for t in self.terms)

    @property
    def lowest_exponent(self) -> float:
        """Smallest exponent (``inf`` for the zero function)."""
        return self.terms[0].exponent if self.terms else math.inf

    def __add__(self, other: "PowerSum") -> "PowerSum":
        return PowerSum.from_pairs(self.pairs + other.pairs)

    def __sub__(self, other: "PowerSum") -> "PowerSum":
        return self + other.scale(-1.0)

    def __neg__(self) -> "PowerSum":
        return self.scale(-1.0)

    def scale(self, factor: float) -> "PowerSum":
        """Multiply every coefficient by ``factor``."""
        return PowerSum.from_pairs([(c * factor, e) for c, e in self.pairs])

    def coefficient_of(self, exponent: float) -> float:
        """Coefficient of ``t^exponent`` (0 when absent)."""
        for term in self.terms:
            if abs(term.exponent - exponent) < settings.EXPONENT_TOL:
                return term.coeff
        return 0.0

    def render(self) -> str:
        """Canonical text form, terms joined by `` + ``."""
        if not self.terms:
            return "0"
        return " + ".join(t.render() for t in self.terms)

    def __str__(self) -> str:
        return self.render()


class DerivativeKind(str, Enum):
    """Which fractional derivative a null space or word step refers to."""

    RL = "RL"
    CAPUTO = "Caputo"


class FracOrder(BaseModel):
    """
    Schema for a fractional order and its integer ceiling.

    ``m`` is derived from ``alpha`` when omitted: ``m - 1 < alpha <= m`` for
    ``alpha > 0`` and ``m = 0`` for ``alpha = 0``.
    """

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., ge=0.0, description="Order alpha >= 0")
    m: int = Field(..., ge=0, description="Integer ceiling of alpha")

    @model_validator(mode="before")
    @classmethod
    def derive_ceiling(cls, data):
        """Fill in ``m`` from ``alpha``."""
        if isinstance(data, dict) and data.get("m") is None and "alpha" in data:
            alpha = float(data["alpha"])
            if math.isfinite(alpha) and alpha >= 0.0:
                return {**data, "m": int(math.ceil(alpha))}
        return data

    @model_validator(mode="after")
    def validate_ceiling(self) -> "FracOrder":
        """Enforce ``m - 1 < alpha <= m``."""
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        if self.alpha == 0.0:
            if self.m != 0:
                raise ValueError("alpha = 0 requires m = 0")
        elif not (self.m - 1 < self.alpha <= self.m):
            raise ValueError(f"m = {self.m} is not the ceiling of alpha = {self.alpha}")
        return self

    @classmethod
    def of(cls, alpha: float) -> "FracOrder":
        """Build the order for ``alpha`` with its derived ceiling."""
        return cls(alpha=alpha, m=None)  # type: ignore[arg-type]

    @property
    def is_integer(self) -> bool:
        """Whether alpha is a whole number."""
        return self.alpha == self.m

    def __str__(self) -> str:
        return format_decimal(self.alpha)
