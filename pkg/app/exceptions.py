"""
Engine exceptions.

Every error the engine raises on purpose derives from ``FracOpsError``. The
class-level ``exit_code`` is what the command line reports for it.
"""

from typing import Any, Dict, Optional


class FracOpsError(Exception):
    """Base class of all engine errors."""

    exit_code: int = 2

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = dict(details or {})

    def __str__(self) -> str:
        if not self.details:
            return self.message
        extra = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{self.message} ({extra})"

    def with_context(self, prefix: str, **details: Any) -> "FracOpsError":
        """
        Build a copy of this error of the same class with extra context.

        Args:
            prefix: Text prepended to the message
            **details: Entries merged into ``details``

        Returns:
            FracOpsError: New error instance of the same class
        """
        return type(self)(f"{prefix}: {self.message}", {**self.details, **details})


class DomainError(FracOpsError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(FracOpsError, ValueError):
    """The gamma function was evaluated at a non-positive integer."""


class NotIntegrableError(DomainError):
    """A power sum has an exponent <= -1 where local integrability is needed."""


class NotCaputoAdmissibleError(DomainError):
    """The m-th derivative of the input is not locally integrable."""


class UnsupportedOrderError(DomainError):
    """The numeric Caputo path cannot reconstruct a derivative of this order."""


class LengthError(DomainError):
    """Initial data length does not match the integer ceiling of the order."""


class NotTransformableError(DomainError):
    """A term has no Laplace transform (exponent <= -1)."""


class UnboundedInitialValueError(DomainError):
    """A Riemann-Liouville initial value diverges at 0+."""


class NotLiouvilleClassError(DomainError):
    """A term does not decay fast enough for the Liouville/Weyl integral."""


class PreconditionError(DomainError):
    """A theorem hypothesis does not hold for the given parameters."""


class ParseError(FracOpsError, ValueError):
    """Expression or operator word text could not be parsed."""

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None,
        offset: int = 0,
        expected: str = "",
    ):
        details = {"offset": offset, "expected": expected, **(details or {})}
        super().__init__(message, details)
        self.offset = int(details["offset"])
        self.expected = str(details["expected"])


class NonConvergenceError(FracOpsError, ArithmeticError):
    """An adaptive quadrature hit its refinement cap."""

    exit_code = 1

    @property
    def last_estimates(self) -> tuple:
        """The final two estimates before giving up."""
        return tuple(self.details.get("estimates", ()))


class TailBoundError(FracOpsError, ArithmeticError):
    """The truncated tail of an improper integral exceeds the tolerance."""

    exit_code = 1
