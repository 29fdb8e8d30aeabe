"""Exception hierarchy shared by every hgcrp module."""

from __future__ import annotations


class HGCRPError(Exception):
    """Base class for all errors raised by hgcrp."""


class ParseError(HGCRPError, ValueError):
    """Malformed instance, partition or auxiliary input text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InstanceError(HGCRPError, ValueError):
    """An instance or partition violates its structural invariants."""


class RationalOverflow(InstanceError):
    """A utility does not fit in a signed 64-bit numerator/denominator."""


class ResidualNotListed(InstanceError):
    """A deviation would leave behind a coalition missing from the IRCL."""

    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"residual coalition {format_members(residual)} is not listed")


class SizeBoundError(InstanceError):
    """The instance lists a coalition larger than the algorithm supports."""


class BudgetExceeded(HGCRPError):
    """Exhaustive enumeration would exceed the configured budget."""


class Unbounded(HGCRPError, ArithmeticError):
    """A welfare ratio has a zero denominator."""


def format_members(members) -> str:
    return "{" + ",".join(str(i) for i in sorted(members)) + "}"
