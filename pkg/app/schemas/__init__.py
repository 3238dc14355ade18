"""
Schemas package.

This package contains all Pydantic schemas organized by domain.
"""

from app.schemas.power_sum import PowerTerm, PowerSum, DerivativeKind, FracOrder
from app.schemas.sampled import SampledFunction, InitialData
from app.schemas.laplace import STerm, SPowerSum, LaplaceSample
from app.schemas.liouville import LiouvilleVariant, FunctionClass, LiouvilleTerm
from app.schemas.exponent_law import (
    OperatorKind,
    OperatorStep,
    OperatorWord,
    WordResult,
    ProblemVariant,
    SequentialProblem,
)
from app.schemas.report import (
    CheckResult,
    SuiteReport,
    JumpIdentityResult,
    ConvergenceReport,
    WorkedExample,
)

__all__ = [
    # Power sums
    "PowerTerm",
    "PowerSum",
    "DerivativeKind",
    "FracOrder",

    # Sampled data
    "SampledFunction",
    "InitialData",

    # Laplace images
    "STerm",
    "SPowerSum",
    "LaplaceSample",

    # Liouville terms
    "LiouvilleVariant",
    "FunctionClass",
    "LiouvilleTerm",

    # Operator words
    "OperatorKind",
    "OperatorStep",
    "OperatorWord",
    "WordResult",
    "ProblemVariant",
    "SequentialProblem",

    # Reports
    "CheckResult",
    "SuiteReport",
    "JumpIdentityResult",
    "ConvergenceReport",
    "WorkedExample",
]
