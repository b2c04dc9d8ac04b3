"""Error types shared across the package."""

from __future__ import annotations


class DdecideError(Exception):
    """Base class for all package errors."""


class DomainViolationError(DdecideError):
    """A partial operation (division, square root) left its domain.

    Raised as a hard error: the evaluation result would be meaningless,
    so no enclosure is produced.  ``path`` locates the offending subterm
    when the violation surfaced during term evaluation.
    """

    def __init__(self, message: str, path: str | None = None) -> None:
        super().__init__(message)
        self.path = path


class WellFormednessError(DdecideError):
    """A formula or term failed validation; ``location`` is a node path."""

    def __init__(self, message: str, location: str = "") -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
        self.reason = message


class ParseError(DdecideError):
    """Input text rejected, with 1-based source position."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
