"""
Laplace-domain schemas.

This module contains the image algebra: finite linear combinations of real
powers of s, for real s > 0.
"""

import math
from typing import Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.schemas.power_sum import format_decimal, merge_pairs


class STerm(BaseModel):
    """Schema for a single image term ``coeff * s^s_exponent``."""

    model_config = ConfigDict(frozen=True)

    coeff: float = Field(..., description="Coefficient")
    s_exponent: float = Field(..., description="Power of s")

    @field_validator("coeff", "s_exponent")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        """Reject infinities and NaN."""
        if not math.isfinite(v):
            raise ValueError("term fields must be finite")
        return v

    def render(self) -> str:
        """Text form ``c*s^e``."""
        return f"{format_decimal(self.coeff)}*s^{format_decimal(self.s_exponent)}"


class SPowerSum(BaseModel):
    """
    Schema for a Laplace image in canonical form.

    s-exponents strictly decreasing, equal exponents merged, no zero
    coefficients.
    """

    model_config = ConfigDict(frozen=True)

    terms: Tuple[STerm, ...] = Field(default=(), description="Canonical terms")

    @model_validator(mode="before")
    @classmethod
    def canonicalize(cls, data):
        """Sort decreasing, merge and prune the incoming terms."""
        if not isinstance(data, dict) or "terms" not in data:
            return data
        raw = []
        for term in data["terms"]:
            if isinstance(term, STerm):
                raw.append((term.coeff, term.s_exponent))
            elif isinstance(term, dict):
                raw.append((term["coeff"], term["s_exponent"]))
            else:
                coeff, exponent = term
                raw.append((coeff, exponent))
        for coeff, exponent in raw:
            if not (math.isfinite(coeff) and math.isfinite(exponent)):
                raise ValueError("term fields must be finite")
        return {
            **data,
            "terms": tuple(
                STerm(coeff=c, s_exponent=e)
                for c, e in merge_pairs(raw, reverse=True)
            ),
        }

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[float, float]]) -> "SPowerSum":
        """Build a canonical image from (coeff, s_exponent) pairs."""
        return cls(terms=tuple(pairs))

    @property
    def pairs(self) -> List[Tuple[float, float]]:
        """Terms as (coeff, s_exponent) tuples."""
        return [(t.coeff, t.s_exponent) for t in self.terms]

    @property
    def is_zero(self) -> bool:
        """Whether this is the zero image."""
        return not self.terms

    def __add__(self, other: "SPowerSum") -> "SPowerSum":
        return SPowerSum.from_pairs(self.pairs + other.pairs)

    def __sub__(self, other: "SPowerSum") -> "SPowerSum":
        return SPowerSum.from_pairs(self.pairs + [(-c, e) for c, e in other.pairs])

    def render(self) -> str:
        """Canonical text form, terms joined by `` + ``."""
        if not self.terms:
            return "0"
        return " + ".join(t.render() for t in self.terms)

    def __str__(self) -> str:
        return self.render()


class LaplaceSample(BaseModel):
    """Schema for one row of a symbolic-versus-numeric Laplace table."""

    s: float = Field(..., gt=0.0, description="Real transform variable")
    symbolic: float = Field(..., description="Image evaluated at s")
    numeric: float = Field(..., description="Quadrature of the time-domain side")
    abs_diff: float = Field(..., ge=0.0, description="|symbolic - numeric|")
