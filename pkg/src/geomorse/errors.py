"""Exception hierarchy shared by all geomorse modules."""

from __future__ import annotations


class GeomorseError(Exception):
    """Base class for all package-specific errors."""


class ParseError(GeomorseError):
    """Malformed textual or JSON input."""


class MixedRadicandError(GeomorseError):
    """Two values from distinct quadratic fields were combined."""


class ValidationError(GeomorseError):
    """An input object violates a documented precondition or invariant."""


class FormulaDomainError(ValidationError):
    """A formula was applied to a model of the wrong kind (e.g. the
    non-orientable iteration formula to an orientable model)."""


class ConditionError(ValidationError):
    """A system of equations violates the coefficient-sum or offset-sum
    conditions required by the operation."""


class DivergenceError(ValidationError):
    """An enumeration would not terminate (non-positive mean index)."""


class BoundaryHitError(ValidationError):
    """A value landed on an interval boundary; valid inputs cannot do
    this, so it signals corrupted data."""


class PeriodMismatchError(ValidationError):
    """A declared analytical period disagrees with the computed one."""


class BudgetExhaustedError(GeomorseError):
    """A bounded scan ran out of budget before succeeding."""

    def __init__(self, message: str, scanned: int = 0):
        super().__init__(message)
        self.scanned = scanned
