"""Library exceptions.

All subclass built-ins so callers catching ``ValueError`` / ``RuntimeError`` keep working.
"""

from __future__ import annotations


class InvalidArgumentError(ValueError):
    """An argument violates an operation's precondition."""


class UnsupportedKernelError(ValueError):
    """The requested kernel variant cannot be used by this operation."""


class NumericalFailureError(RuntimeError):
    """The eigensolver did not converge."""

    def __init__(self, message: str, iterations: int = 0) -> None:
        super().__init__(message)
        self.iterations = iterations
