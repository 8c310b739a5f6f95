"""Exception types shared across the package."""

from __future__ import annotations


class GspecError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GspecError):
    """An input object failed a structural check (bad table, bad subgroup, ...)."""


class BudgetError(GspecError):
    """A configured search or enumeration budget was exceeded."""


class ParseError(GspecError):
    """Syntax or binding error in the equation DSL."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col
