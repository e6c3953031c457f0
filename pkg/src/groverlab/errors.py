"""Exception hierarchy.

DomainError marks invalid inputs (CLI exit code 1); the remaining classes
mark computations that cannot proceed on valid inputs (CLI exit code 2).
"""


class GroverLabError(Exception):
    """Base class for all package errors."""


class DomainError(GroverLabError, ValueError):
    """An argument violates an operation's precondition."""


class ComputationError(GroverLabError):
    """A prediction or evolution cannot be carried out."""


class UnsupportedSpecError(ComputationError):
    """The predictor was handed a multi-axis iterate (simulation-only)."""


class UselessInitialStateError(ComputationError):
    """The success probability never rises above numerical zero."""


class NoOscillationError(ComputationError):
    """The iterate has zero angular frequency; there is no first maximum."""
