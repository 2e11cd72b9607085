"""Exception types. Every error carries a stable ``code`` string used by the CLI."""

from __future__ import annotations

from dataclasses import dataclass


class HeckeError(Exception):
    code = "HeckeError"

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


@dataclass(frozen=True)
class Violation:
    """One violated invariant found during validation."""

    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class ValidationError(HeckeError):
    """Raised when a raw description fails one or more invariants."""

    code = "ValidationError"

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))

    def __str__(self) -> str:
        return "; ".join(str(v) for v in self.violations)

    @property
    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


class BadQ(HeckeError):
    code = "BadQ"


class SignatureMismatch(HeckeError):
    code = "SignatureMismatch"


class NotRealizable(HeckeError):
    code = "NotRealizable"


class InvalidCutSet(HeckeError):
    code = "InvalidCutSet"


class BadBasepoint(HeckeError):
    code = "BadBasepoint"


class LimitExceeded(HeckeError):
    code = "LimitExceeded"


class InternalInvariantViolation(HeckeError):
    code = "InternalInvariantViolation"


class BadCenter(HeckeError):
    code = "BadCenter"


class NumericalFailure(HeckeError):
    code = "NumericalFailure"
