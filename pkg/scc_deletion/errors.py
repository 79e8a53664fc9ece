"""Exception hierarchy shared by the solvers and the command-line front end."""

from __future__ import annotations


class SccDeletionError(Exception):
    """Base class for every error raised by this package."""


class InputError(SccDeletionError, ValueError):
    """Malformed input: bad file contents, invalid ids, or invalid parameters."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}: {self.message}"


class BudgetError(SccDeletionError, RuntimeError):
    """A configured resource limit would be exceeded."""

    def __init__(self, message: str, limit: int | None = None):
        super().__init__(message)
        self.limit = limit
