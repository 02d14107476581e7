"""Exception hierarchy shared by all workbench modules."""

from typing import Optional


class QctError(Exception):
    """Root of every error raised deliberately by the workbench."""


class UnknownCalculusError(QctError, ValueError):
    """A calculus or domain token is not recognised."""


class SchemaMismatchError(QctError, ValueError):
    """Two values built over different calculi were combined."""


class DegenerateDomainError(QctError, ValueError):
    """A subdomain is too small to provide the requested elements."""


class BudgetExceededError(QctError, RuntimeError):
    """The exhaustive oracle refused a domain larger than its triple budget."""


class IncompleteTableError(QctError, ValueError):
    """A table expected to be complete has the wrong number of triads."""


class _LineError(QctError, ValueError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class CtFormatError(_LineError):
    """A composition-table file is malformed."""


class NetworkFormatError(_LineError):
    """A constraint-network file is malformed."""
