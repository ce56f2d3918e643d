"""
Exception hierarchy for edfkit.

Every error carries the exit code the CLI reports for it, the same way the
HTTP layer of a web service maps exceptions to status codes.
"""
from typing import Any, Optional

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


class EdfkitError(Exception):
    """Base class for all edfkit errors."""

    exit_code: int = EXIT_PRECONDITION

    def __init__(self, detail: str, context: Optional[dict[str, Any]] = None):
        super().__init__(detail)
        self.detail = detail
        self.context = context or {}

    def __str__(self) -> str:
        return f"{type(self).__name__}: {self.detail}"


class InvalidGroup(EdfkitError):
    exit_code = EXIT_USAGE


class GroupMismatch(EdfkitError):
    exit_code = EXIT_USAGE


class NotCoprime(EdfkitError):
    exit_code = EXIT_PRECONDITION


class InvalidInput(EdfkitError):
    exit_code = EXIT_USAGE


class NotPrime(EdfkitError):
    exit_code = EXIT_PRECONDITION


class InvalidCyclotomy(EdfkitError):
    exit_code = EXIT_PRECONDITION


class NotDisjoint(EdfkitError):
    exit_code = EXIT_PRECONDITION


class Infeasible(EdfkitError):
    exit_code = EXIT_PRECONDITION


class InvalidDelta(EdfkitError):
    exit_code = EXIT_PRECONDITION


class PreconditionUnmet(EdfkitError):
    exit_code = EXIT_PRECONDITION


class ParseError(EdfkitError):
    exit_code = EXIT_PRECONDITION


class CatalogCorrupt(EdfkitError):
    exit_code = EXIT_FALSE


class BudgetExceeded(EdfkitError):
    """Raised inside the search when the node budget runs out."""

    exit_code = EXIT_FALSE
