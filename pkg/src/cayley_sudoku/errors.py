"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CayleySudokuError(Exception):
    """Base class for all errors raised by the package."""


class ParseError(CayleySudokuError, ValueError):
    """Malformed textual input (cycle strings, group specs, files)."""

    def __init__(self, message: str, position: int | None = None) -> None:
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class GroupError(CayleySudokuError, ValueError):
    """A table or element set does not define a group.

    ``witness`` holds the cells or elements that demonstrate the failure.
    """

    def __init__(self, message: str, witness: dict | None = None) -> None:
        super().__init__(message)
        self.witness = witness or {}


class ConstructionError(CayleySudokuError):
    """The hypothesis of a construction fails for the given data."""

    def __init__(self, message: str, witness: dict | None = None) -> None:
        super().__init__(message)
        self.witness = witness or {}


class MalformedTableError(CayleySudokuError):
    """Table borders, blocks and body disagree with each other or the group."""


class ResourceLimitError(CayleySudokuError):
    """A search or closure exceeded its configured cap."""

    def __init__(self, message: str, cap: int) -> None:
        super().__init__(f"{message} (cap={cap})")
        self.cap = cap


class ConsistencyError(CayleySudokuError, AssertionError):
    """Two computations that a theorem says must agree did not."""
