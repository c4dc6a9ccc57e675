"""Bordered, block-partitioned Cayley tables and their sudoku check.

Blocks are contiguous ranges over the row and column label sequences, so a
table is fully described by its group, the two label orders and the two
lists of block ranges.  ``body[i][j]`` is ``row_labels[i] * col_labels[j]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import MalformedTableError, ParseError
from .group import FiniteGroup, from_table

Range = tuple[int, int]


@dataclass(frozen=True)
class CayleySudokuTable:
    group: FiniteGroup
    row_labels: tuple[int, ...]
    col_labels: tuple[int, ...]
    row_blocks: tuple[Range, ...]
    col_blocks: tuple[Range, ...]
    body: tuple[tuple[int, ...], ...]

    @classmethod
    def arrange(
        cls,
        group: FiniteGroup,
        row_parts: Sequence[Sequence[int]],
        col_parts: Sequence[Sequence[int]],
    ) -> CayleySudokuTable:
        """Lay out the Cayley table with one block per row part and column part.

        No sudoku check is made here; see ``verify_sudoku``.
        """
        row_labels, row_blocks = _flatten(row_parts)
        col_labels, col_blocks = _flatten(col_parts)
        body = tuple(tuple(group.row(r)[c] for c in col_labels) for r in row_labels)
        return cls(group, row_labels, col_labels, row_blocks, col_blocks, body)

    @property
    def size(self) -> int:
        return len(self.row_labels)

    def row_parts(self) -> list[tuple[int, ...]]:
        return [self.row_labels[a:b] for a, b in self.row_blocks]

    def col_parts(self) -> list[tuple[int, ...]]:
        return [self.col_labels[a:b] for a, b in self.col_blocks]

    @property
    def block_shape(self) -> tuple[int, int] | None:
        """(rows, columns) of every block, or None if blocks are not uniform."""
        heights = {b - a for a, b in self.row_blocks}
        widths = {b - a for a, b in self.col_blocks}
        if len(heights) != 1 or len(widths) != 1:
            return None
        return heights.pop(), widths.pop()

    def block(self, i: int, j: int) -> list[int]:
        (r0, r1), (c0, c1) = self.row_blocks[i], self.col_blocks[j]
        return [self.body[r][c] for r in range(r0, r1) for c in range(c0, c1)]

    def body_labels(self) -> list[list[str]]:
        labels = self.group.labels
        return [[labels[x] for x in row] for row in self.body]


def _flatten(parts: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], tuple[Range, ...]]:
    labels: list[int] = []
    blocks = []
    for part in parts:
        start = len(labels)
        labels.extend(part)
        blocks.append((start, len(labels)))
    return tuple(labels), tuple(blocks)


@dataclass(frozen=True)
class BlockFailure:
    row_block: int
    col_block: int
    duplicated: tuple[int, ...]
    missing: tuple[int, ...]

    def describe(self, group: FiniteGroup) -> dict:
        return {
            "row_block": self.row_block,
            "col_block": self.col_block,
            "duplicated": [group.labels[x] for x in self.duplicated],
            "missing": [group.labels[x] for x in self.missing],
        }


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    failures: tuple[BlockFailure, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.passed


def check_well_formed(T: CayleySudokuTable) -> None:
    """Raise MalformedTableError unless borders, blocks and body agree with the group."""
    G = T.group
    n = G.order
    for name, labels in (("row", T.row_labels), ("column", T.col_labels)):
        if sorted(labels) != list(range(n)):
            raise MalformedTableError(f"{name} labels are not a permutation of the group elements")
    for name, blocks, total in (("row", T.row_blocks, n), ("column", T.col_blocks, n)):
        pos = 0
        for a, b in blocks:
            if a != pos or b <= a:
                raise MalformedTableError(f"{name} blocks are not contiguous ranges covering 0..{total}")
            pos = b
        if pos != total:
            raise MalformedTableError(f"{name} blocks do not cover 0..{total}")
    if len(T.body) != n or any(len(row) != n for row in T.body):
        raise MalformedTableError(f"body is not {n}x{n}")
    for i, r in enumerate(T.row_labels):
        row = G.row(r)
        for j, c in enumerate(T.col_labels):
            if T.body[i][j] != row[c]:
                raise MalformedTableError(
                    f"body cell ({i}, {j}) is {G.labels[T.body[i][j]]} but "
                    f"{G.labels[r]}*{G.labels[c]} = {G.labels[row[c]]}"
                )


def verify_sudoku(T: CayleySudokuTable, exhaustive: bool = False) -> VerificationReport:
    """Check every block holds each group element exactly once.

    The first failing block in row-major block order is reported unless
    ``exhaustive`` is set.  Raises MalformedTableError when the table itself
    is inconsistent.
    """
    check_well_formed(T)
    n = T.group.order
    if T.block_shape is None:
        return VerificationReport(False, (), "blocks are not uniformly sized")
    h, w = T.block_shape
    if h * w != n:
        return VerificationReport(False, (), f"blocks are {h}x{w}, need {n} cells")
    failures = []
    for i in range(len(T.row_blocks)):
        for j in range(len(T.col_blocks)):
            cells = T.block(i, j)
            if len(set(cells)) == n:
                continue
            seen: set[int] = set()
            dup = []
            for x in cells:
                if x in seen and x not in dup:
                    dup.append(x)
                seen.add(x)
            missing = tuple(x for x in range(n) if x not in seen)
            failures.append(BlockFailure(i, j, tuple(sorted(dup)), missing))
            if not exhaustive:
                return VerificationReport(False, tuple(failures), "block repeats an element")
    if failures:
        return VerificationReport(False, tuple(failures), "block repeats an element")
    return VerificationReport(True)


# ---------------------------------------------------------------- rendering


def render_text(T: CayleySudokuTable) -> str:
    """Fixed-width bordered grid.

    ``||`` and ``=`` rules separate the borders from the body; ``|`` and
    ``-`` rules separate blocks.
    """
    labels = T.group.labels
    width = max(len(s) for s in labels)
    lw = max(len(labels[r]) for r in T.row_labels)

    def cells(values: Sequence[int]) -> str:
        chunks = []
        for a, b in T.col_blocks:
            chunks.append(" ".join(labels[v].ljust(width) for v in values[a:b]))
        return " " + " | ".join(chunks) + " |"

    def rule(ch: str, cross: str) -> str:
        segs = [ch * ((b - a) * (width + 1) + 1) for a, b in T.col_blocks]
        return ch * (lw + 1) + cross + "+".join(segs) + "+"

    lines = [" " * (lw + 1) + "||" + cells(T.col_labels), rule("=", "++")]
    for a, b in T.row_blocks:
        for i in range(a, b):
            lines.append(labels[T.row_labels[i]].ljust(lw) + " ||" + cells(T.body[i]))
        lines.append(rule("-", "++"))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_rendered(text: str, group: FiniteGroup) -> tuple[tuple[int, ...], tuple[int, ...], tuple[Range, ...], tuple[Range, ...]]:
    """Recover (row_labels, col_labels, row_blocks, col_blocks) from ``render_text`` output."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3:
        raise ParseError("rendered table is too short")
    header = lines[0].split("||", 1)
    if len(header) != 2:
        raise ParseError("header row lacks '||'")
    col_parts = [chunk.split() for chunk in header[1].split("|") if chunk.strip()]
    col_labels, col_blocks = _flatten([[group.index_of(s) for s in p] for p in col_parts])
    row_parts: list[list[int]] = [[]]
    for ln in lines[2:]:
        if set(ln.strip()) <= set("-+"):
            row_parts.append([])
            continue
        left = ln.split("||", 1)[0]
        row_parts[-1].append(group.index_of(left.strip()))
    row_labels, row_blocks = _flatten([p for p in row_parts if p])
    return row_labels, col_labels, row_blocks, col_blocks


# ------------------------------------------------------------ Latin squares


@dataclass(frozen=True)
class LatinSquare:
    order: int
    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        grid = tuple(tuple(r) for r in self.grid)
        object.__setattr__(self, "grid", grid)
        m = self.order
        symbols = set(range(m))
        if len(grid) != m or any(len(r) != m for r in grid):
            raise ValueError(f"grid is not {m}x{m}")
        for i, r in enumerate(grid):
            if set(r) != symbols:
                raise ValueError(f"row {i} is not a permutation of 0..{m - 1}")
        for j in range(m):
            if {grid[i][j] for i in range(m)} != symbols:
                raise ValueError(f"column {j} is not a permutation of 0..{m - 1}")


def is_latin(grid: Sequence[Sequence[int]]) -> bool:
    try:
        LatinSquare(len(grid), grid)
    except ValueError:
        return False
    return True


def body_square(T: CayleySudokuTable) -> LatinSquare:
    return LatinSquare(T.size, T.body)


def blocks_as_latin_square(T: CayleySudokuTable, col_block: int) -> LatinSquare:
    """The coset square of one column of blocks; ValueError if it is not Latin."""
    grid = coset_square(T, col_block)
    return LatinSquare(len(grid), grid)


def coset_square(T: CayleySudokuTable, col_block: int) -> list[list[int]]:
    """Coset square for one column of blocks of a Construction-2R layout.

    Row blocks must each be one right coset Sg_i of a common subgroup S.  Entry
    (i, c) is the index of the row block containing g_i * r_c, where r_c is the
    c-th label of the column block.
    """
    G = T.group
    parts = T.row_parts()
    where = {}
    for i, part in enumerate(parts):
        for a in part:
            where[a] = i
    S = sorted(G.mul(x, G.inverse[parts[0][0]]) for x in parts[0])
    if G.identity not in S:
        raise MalformedTableError("first row block is not a right coset")
    for i, part in enumerate(parts):
        coset = sorted(G.mul(s, part[0]) for s in S)
        if coset != sorted(part):
            raise MalformedTableError(f"row block {i} is not a right coset of the first block's subgroup")
    a, b = T.col_blocks[col_block]
    reps = T.col_labels[a:b]
    if len(reps) != len(parts):
        raise MalformedTableError("column block width differs from the number of row cosets")
    return [[where[G.mul(part[0], r)] for r in reps] for part in parts]


def are_orthogonal(A: LatinSquare, B: LatinSquare) -> bool:
    if A.order != B.order:
        raise ValueError(f"order mismatch: {A.order} vs {B.order}")
    pairs = {(A.grid[i][j], B.grid[i][j]) for i in range(A.order) for j in range(A.order)}
    return len(pairs) == A.order**2


# ---------------------------------------------------------- exchange format

EXCHANGE_FIELDS = ("body", "col_blocks", "col_labels", "group", "row_blocks", "row_labels", "verified")


def to_exchange(T: CayleySudokuTable, verified: bool | None = None) -> str:
    """Canonical JSON document for a table (sorted keys, fixed indentation)."""
    if verified is None:
        verified = verify_sudoku(T).passed
    G = T.group
    labels = G.labels
    doc = {
        "group": {
            "labels": list(labels),
            "spec": G.spec,
            "table": [[labels[x] for x in G.row(a)] for a in G.elements],
        },
        "row_labels": [labels[x] for x in T.row_labels],
        "col_labels": [labels[x] for x in T.col_labels],
        "row_blocks": [list(r) for r in T.row_blocks],
        "col_blocks": [list(r) for r in T.col_blocks],
        "body": [[labels[x] for x in row] for row in T.body],
        "verified": bool(verified),
    }
    return dump_document(doc)


def dump_document(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def from_exchange(text: str) -> CayleySudokuTable:
    """Parse an exchange document; the group table is re-validated.

    Raises ParseError for structural problems and GroupError for an invalid
    group.  The body is taken as written; ``verify_sudoku`` checks it.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(doc, dict) or set(doc) != set(EXCHANGE_FIELDS):
        raise ParseError(f"expected exactly the fields {', '.join(EXCHANGE_FIELDS)}")
    g = doc["group"]
    if not isinstance(g, dict) or "labels" not in g or "table" not in g:
        raise ParseError("group needs 'labels' and 'table'")
    G = from_table(g["labels"], g["table"])
    G.spec = g.get("spec")
    try:
        rl = tuple(G.index_of(s) for s in doc["row_labels"])
        cl = tuple(G.index_of(s) for s in doc["col_labels"])
        rb = tuple((int(a), int(b)) for a, b in doc["row_blocks"])
        cb = tuple((int(a), int(b)) for a, b in doc["col_blocks"])
        body = tuple(tuple(G.index_of(s) for s in row) for row in doc["body"])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad table field: {exc}") from None
    return CayleySudokuTable(G, rl, cl, rb, cb, body)
