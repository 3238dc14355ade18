"""
Verification report schemas.

This module contains the result records of the verification suites and of
the single-shot checks that feed them.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Schema for a single verified identity or frozen value."""

    name: str = Field(..., description="What was checked")
    ok: bool = Field(..., description="Whether the check passed")
    detail: Optional[str] = Field(None, description="Measured vs expected")


class SuiteReport(BaseModel):
    """Schema for the outcome of one verification suite."""

    suite: str = Field(..., description="Suite name")
    cases: int = Field(default=0, description="Number of checks run")
    failures: int = Field(default=0, description="Number of failed checks")
    skipped: int = Field(default=0, description="Cases outside the hypothesis")
    checks: List[CheckResult] = Field(default_factory=list, description="Failed or notable checks")
    metrics: Dict[str, Any] = Field(default_factory=dict, description="Measured quantities")

    @property
    def ok(self) -> bool:
        """Whether the suite passed."""
        return self.failures == 0

    def record(self, name: str, ok: bool, detail: Optional[str] = None, keep: bool = False) -> None:
        """
        Count one check, keeping it in ``checks`` when it failed or ``keep``.

        Args:
            name: Check label
            ok: Outcome
            detail: Measured vs expected description
            keep: Keep the record even when it passed
        """
        self.cases += 1
        if not ok:
            self.failures += 1
        if keep or not ok:
            self.checks.append(CheckResult(name=name, ok=ok, detail=detail))


class JumpIdentityResult(BaseModel):
    """Schema for both sides of the causal jump identity at one point."""

    lhs: float = Field(..., description="t^-a f(0+)/Gamma(1-a) + Caputo derivative")
    rhs: float = Field(..., description="Riemann-Liouville derivative")
    diff: float = Field(..., description="Relative difference")
    ok: bool = Field(..., description="Whether diff is within tolerance")


class ConvergenceReport(BaseModel):
    """Schema for a measured convergence order."""

    order: float = Field(..., description="Least-squares slope of log error vs log step")
    steps: List[float] = Field(..., description="Grid spacings")
    errors: List[float] = Field(..., description="Max-node errors")
    degenerate: bool = Field(default=False, description="Errors at rounding floor")


class WorkedExample(BaseModel):
    """Schema for one row of the worked-example table."""

    label: str = Field(..., description="Operator applied to the input")
    result: str = Field(..., description="Computed value or expression")
    expected: str = Field(..., description="Reference value or expression")
    error: float = Field(..., description="Absolute or coefficient error")
    ok: bool = Field(..., description="Whether the error is within its bound")
