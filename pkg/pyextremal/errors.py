"""Exception hierarchy for pyextremal."""

from typing import Optional


class PyExtremalError(Exception):
    """Base class for all toolkit errors."""


class DomainError(PyExtremalError, ValueError):
    """An operation was called outside its domain."""


class ConstructionError(DomainError):
    """A construction cannot be realised with the requested parameters."""


class GraphFormatError(DomainError):
    """A graph, colouring or stream file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(PyExtremalError, RuntimeError):
    """A search was refused or stopped because it would exceed its node budget."""

    def __init__(self, message: str, estimate: Optional[int] = None, budget: Optional[int] = None):
        self.estimate = estimate
        self.budget = budget
        super().__init__(message)


class CountOverflowError(PyExtremalError, OverflowError):
    """A count left the unsigned 64-bit range."""


class InvariantViolation(PyExtremalError, AssertionError):
    """A checked mathematical property failed on concrete input."""
