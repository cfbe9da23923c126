"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class PAdicError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(PAdicError, ZeroDivisionError):
    """Division by an exact zero."""


class InsufficientPrecision(PAdicError, ArithmeticError):
    """The stored digits do not determine the requested answer."""


class UndecidedError(InsufficientPrecision):
    """An undecided three-valued verdict was coerced to a boolean."""


class WindowExceeded(PAdicError):
    """The ord search ran off the end of its bounded window."""


class NotOneUnit(PAdicError, ValueError):
    pass


class UnsupportedExponent(PAdicError, ValueError):
    pass


class UnsupportedTarget(PAdicError, ValueError):
    pass


class SpaceMismatch(PAdicError, ValueError):
    pass


class FormatError(PAdicError, ValueError):
    """Malformed textual input; carries the offending line and field."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = (", ".join(where) + ": ") if where else ""
        super().__init__(prefix + message)
