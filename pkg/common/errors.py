"""
Exception hierarchy shared across all apps.

Every exception carries the exit code the CLI should terminate with.
"""

from dataclasses import dataclass
from typing import List, Optional


class QcError(Exception):
    """Base class for all library errors."""

    exit_code: int = 1


class UsageError(QcError):
    """Bad input: mismatched fields, malformed files, bad flags."""

    exit_code = 1


class DomainError(UsageError):
    """Operation undefined for its argument (inverse of zero, division by zero polynomial)."""


class FieldConfigError(QcError):
    """The field configuration does not describe a valid GF(p^r) with an m-th root of unity."""

    exit_code = 2


@dataclass(frozen=True)
class ConditionViolation:
    """One violated Gröbner-basis condition."""

    condition: int
    row: int
    col: int
    message: str

    def __str__(self) -> str:
        return f"condition {self.condition} at g_{{{self.row},{self.col}}}: {self.message}"


class InvalidCodeError(QcError):
    """The generator matrix is not in reduced Gröbner basis form."""

    exit_code = 2

    def __init__(self, violations: List[ConditionViolation], message: Optional[str] = None):
        self.violations = list(violations)
        super().__init__(message or "; ".join(str(v) for v in self.violations))


class SpectralError(QcError):
    """Algebraic and geometric multiplicity disagree."""

    exit_code = 2


class NotACertificateError(QcError):
    """The parameters (f, z, delta, nu) do not certify a bound."""

    exit_code = 2


class NoBoundError(QcError):
    """No certificate with delta > 2 exists."""

    exit_code = 2


class PreconditionError(QcError):
    """The decoder was called with an unusable certificate."""

    exit_code = 1


class EnumerationGuardError(QcError):
    """Exhaustive enumeration refused because the code is too large."""

    exit_code = 1


class DecodingFailure(QcError):
    """A decoding stage failed; converted to a FAILURE outcome by the decoder."""

    exit_code = 3

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)
