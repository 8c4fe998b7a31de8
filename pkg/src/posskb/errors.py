"""Exception hierarchy shared across the package."""

from __future__ import annotations


class PosskbError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PosskbError):
    """Malformed concrete syntax (concepts, formulas, or KB files).

    Carries the 1-based line and column of the offending token when known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column or 0}: {message}"
        super().__init__(message)


class WeightError(PosskbError):
    """A degree outside (0, 1], or a malformed weight literal."""


class DialectMismatchError(PosskbError):
    """A query or statement does not match the knowledge base dialect."""


class UnknownAtomError(PosskbError):
    """A formula mentions an atom outside a distribution's universe."""


class ResourceLimitExceeded(PosskbError):
    """The tableau hit its node or rule-firing cap.

    This is a third outcome distinct from both consistency verdicts; callers
    must not interpret it as either.
    """
