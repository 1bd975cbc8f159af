"""Exception hierarchy shared by the library and the CLI exit-code mapping."""

from __future__ import annotations


class MetacyclicError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class ParameterError(MetacyclicError, ValueError):
    """Invalid or inconsistent input parameters."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class PreconditionError(ParameterError):
    """Inputs are well-formed but an operation's precondition fails."""


class VerificationError(MetacyclicError):
    """A code or descriptor failed a structural check (norm, chain, invariance)."""

    exit_code = 2

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class CapacityError(MetacyclicError):
    """Requested work exceeds a configured guard."""

    exit_code = 3


class InternalConsistencyError(MetacyclicError, AssertionError):
    """An identity that must hold by construction did not."""

    exit_code = 2
