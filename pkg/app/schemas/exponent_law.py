"""
Exponent-law schemas.

This module contains operator words (sequential compositions of fractional
operators) and the three sequential problems whose solution spaces differ.
"""

from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.schemas.power_sum import FracOrder, PowerSum


class OperatorKind(str, Enum):
    """Operators that may appear in a word."""

    J = "J"
    D_RL = "D"
    D_C = "Dc"


class OperatorStep(BaseModel):
    """Schema for one operator of a word."""

    model_config = ConfigDict(frozen=True)

    kind: OperatorKind = Field(..., description="Operator type")
    order: FracOrder = Field(..., description="Order of the operator")

    def render(self) -> str:
        """Text form ``kind:alpha``."""
        return f"{self.kind.value}:{self.order}"


class OperatorWord(BaseModel):
    """
    Schema for a composition of operators.

    Steps are kept in written order and applied rightmost-first, so the word
    ``D:0.5,D:1.5`` means D^0.5 D^1.5 and applies D^1.5 first.
    """

    model_config = ConfigDict(frozen=True)

    steps: Tuple[OperatorStep, ...] = Field(..., description="Steps in written order")

    @field_validator("steps")
    @classmethod
    def validate_steps(cls, v: Tuple[OperatorStep, ...]) -> Tuple[OperatorStep, ...]:
        """A word has at least one step."""
        if not v:
            raise ValueError("an operator word needs at least one step")
        return v

    @classmethod
    def of(cls, *steps: Tuple[str, float]) -> "OperatorWord":
        """Build a word from (kind, alpha) pairs in written order."""
        return cls(
            steps=tuple(
                OperatorStep(kind=OperatorKind(kind), order=FracOrder.of(alpha))
                for kind, alpha in steps
            )
        )

    def render(self) -> str:
        """Comma-separated text form."""
        return ",".join(step.render() for step in self.steps)


class WordResult(BaseModel):
    """Schema for the outcome of applying a word."""

    model_config = ConfigDict(frozen=True)

    result: PowerSum = Field(..., description="Final result")
    intermediates: List[PowerSum] = Field(
        default_factory=list,
        description="Input followed by the result after each applied step",
    )


class ProblemVariant(str, Enum):
    """The three sequential problems D^a D^b u = f, D^b D^a v = f, D w = f."""

    A = "A"
    B = "B"
    C = "C"


class SequentialProblem(BaseModel):
    """Schema for a sequential fractional problem with its free constants."""

    model_config = ConfigDict(frozen=True)

    variant: ProblemVariant = Field(..., description="Problem (A), (B) or (C)")
    alpha: float = Field(default=0.5, gt=0.0, lt=1.0, description="Order alpha")
    beta: float = Field(default=0.5, gt=0.0, lt=1.0, description="Order beta")
    rhs: PowerSum = Field(..., description="Right-hand side f")
    constants: Tuple[float, ...] = Field(default=(), description="Free constants")

    @model_validator(mode="after")
    def validate_problem(self) -> "SequentialProblem":
        """Enforce alpha + beta = 1 and the constant count of the variant."""
        if abs(self.alpha + self.beta - 1.0) > 1e-12:
            raise ValueError("alpha + beta must equal 1")
        expected = 1 if self.variant is ProblemVariant.C else 2
        if self.constants and len(self.constants) != expected:
            raise ValueError(
                f"problem {self.variant.value} takes {expected} constants, "
                f"got {len(self.constants)}"
            )
        return self
