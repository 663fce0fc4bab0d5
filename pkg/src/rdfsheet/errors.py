"""Exception types shared across the package."""

from __future__ import annotations


class RdfSheetError(Exception):
    """Base class for all package errors."""


class TermError(RdfSheetError, ValueError):
    """An IRI or literal violates its lexical constraints."""


class ParseError(RdfSheetError, ValueError):
    """Malformed N-Triples or Turtle input."""

    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class CanonicalizationError(RdfSheetError, ValueError):
    """Generated IRIs cannot be renamed deterministically."""


class EditError(RdfSheetError, ValueError):
    """An edit references an unknown sheet, bad coordinates, or bad input."""


class AmbiguousLabelError(RdfSheetError, ValueError):
    """A label matches more than one resource; the caller must pick one."""

    def __init__(self, label: str, language: str | None, candidates):
        self.label = label
        self.language = language
        self.candidates = tuple(candidates)
        super().__init__(
            f"label {label!r} is ambiguous between {len(self.candidates)} resources"
        )


class MetricsUndefinedError(RdfSheetError, ValueError):
    """A ratio's denominator is zero for this graph."""


class LogError(RdfSheetError, ValueError):
    """An edit-log file is corrupt or has an unsupported schema version."""
