"""Custom exceptions for the quaternionic scattering toolkit.

This module defines a hierarchy of exceptions that keeps argument problems
apart from numerical failures, so the CLI can map them onto distinct exit
codes and library callers can catch exactly what they expect.
"""

from pathlib import Path


class QDeltaError(Exception):
    """Base exception for all toolkit errors.

    All custom exceptions in this package inherit from this base class,
    making it easy to catch every scattering-related error at once.
    """


class ConfigurationError(QDeltaError):
    """Raised when a config file or a flag combination is unusable."""


class ParameterError(QDeltaError):
    """Raised when a problem definition is invalid.

    This includes:
    - Non-positive mass or half-separation
    - Sweep ranges that are empty or reversed
    - Too few samples for an analysis
    """


class NumericalError(QDeltaError):
    """Base exception for numeric failures of a well-formed problem."""


class DomainError(NumericalError):
    """Raised when the energy lies at or below the threshold E = m."""


class RangeError(NumericalError):
    """Raised when evanescent exponentials would overflow.

    The guard is on the exponent (p·a0 or p·|x|), see
    ``MAX_EVANESCENT_EXPONENT``.
    """


class SingularMatrixError(NumericalError):
    """Raised when elimination meets a pivot below the singular threshold."""

    def __init__(self, message: str, *, pivot: float, column: str) -> None:
        super().__init__(message)
        self.pivot = pivot
        self.column = column


class StepSizeError(NumericalError):
    """Raised when the oracle's local truncation estimate is too large."""


class SweepError(NumericalError):
    """Raised when every point of a sweep failed."""


class EmitError(QDeltaError):
    """Raised when a result file cannot be written."""

    def __init__(self, message: str, *, path: Path) -> None:
        super().__init__(message)
        self.path = path


def format_error_context(error: Exception, context: dict | None = None) -> str:
    """Format an error message with additional context."""
    base_msg = str(error)
    if not context:
        return base_msg

    context_str = ", ".join(f"{k}={v}" for k, v in context.items())
    return f"{base_msg} (Context: {context_str})"
