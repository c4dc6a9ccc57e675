"""Cayley-Sudoku tables: constructions, searches and verification over finite groups."""

from .errors import (
    CayleySudokuError,
    ConsistencyError,
    ConstructionError,
    GroupError,
    MalformedTableError,
    ParseError,
    ResourceLimitError,
)
from .group import FiniteGroup, Subgroup, make_cyclic, make_symmetric, subgroup_generated
from .perm import Permutation, compose, parse_cycles, render_cycles
from .sudoku_table import CayleySudokuTable, render_text, verify_sudoku

__all__ = [
    "CayleySudokuError",
    "CayleySudokuTable",
    "ConsistencyError",
    "ConstructionError",
    "FiniteGroup",
    "GroupError",
    "MalformedTableError",
    "ParseError",
    "Permutation",
    "ResourceLimitError",
    "Subgroup",
    "compose",
    "make_cyclic",
    "make_symmetric",
    "parse_cycles",
    "render_cycles",
    "render_text",
    "subgroup_generated",
    "verify_sudoku",
]
