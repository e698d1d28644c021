"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class TreeCoverError(Exception):
    """Base class for all errors raised by treecover."""


class InvalidInput(TreeCoverError, ValueError):
    """An argument violates the documented input contract."""


class PreconditionViolation(TreeCoverError, ValueError):
    """An operation was called on data that does not satisfy its precondition."""


class ResourceLimitExceeded(TreeCoverError, RuntimeError):
    """An exhaustive search outgrew its configured state budget."""


class ParseError(TreeCoverError, ValueError):
    """Malformed instance or strategy text, with a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
