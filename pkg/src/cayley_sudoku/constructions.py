"""The three Cayley-Sudoku constructions and the searches that feed them.

Construction entry points take explicit partitions and check the hypothesis
of the construction before laying out the table; a failed hypothesis raises
ConstructionError carrying a witness (part, conjugate, coset).  Part order is
preserved exactly as given, which is what fixes the column and row order of
the rendered table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ConsistencyError, ConstructionError, ResourceLimitError
from .group import (
    LEFT,
    RIGHT,
    Subgroup,
    Transversal,
    _check_side,
    coset_labelling,
    cosets,
    conjugates,
    transversal_defect,
)
from .sudoku_table import CayleySudokuTable, verify_sudoku

DEFAULT_NODE_CAP = 10**8


def _other(side: str) -> str:
    return RIGHT if side == LEFT else LEFT


@dataclass(frozen=True)
class TransversalPartition:
    subgroup: Subgroup
    side: str
    parts: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class UniversalTransversal:
    subgroup: Subgroup
    side: str
    reps: tuple[int, ...]


def partition_defect(S: Subgroup, side: str, parts: Sequence[Sequence[int]]) -> dict | None:
    """None if ``parts`` partition G into transversals of S of the side, else a witness."""
    G = S.parent
    flat = [a for p in parts for a in p]
    if sorted(flat) != list(G.elements):
        counts: dict[int, int] = {}
        for a in flat:
            counts[a] = counts.get(a, 0) + 1
        repeated = [G.labels[a] for a, c in counts.items() if c > 1]
        missing = [G.labels[a] for a in G.elements if a not in counts]
        return {"kind": "not-a-partition", "repeated": repeated, "missing": missing}
    for i, part in enumerate(parts):
        defect = transversal_defect(S, side, part)
        if defect is not None:
            return {"part": i, **defect}
    return None


def make_partition(S: Subgroup, side: str, parts: Sequence[Sequence[int]]) -> TransversalPartition:
    _check_side(side)
    defect = partition_defect(S, side, parts)
    if defect is not None:
        raise ConstructionError(
            f"parts do not partition G into {side} transversals: {defect}", defect
        )
    return TransversalPartition(S, side, tuple(tuple(p) for p in parts))


def default_partition(S: Subgroup, side: str) -> TransversalPartition:
    """Part i takes the i-th smallest element of every coset of the side."""
    _check_side(side)
    cs = cosets(S, side)
    parts = tuple(tuple(c.elements[i] for c in cs) for i in range(S.order))
    return TransversalPartition(S, side, parts)


def universality_defect(S: Subgroup, side: str, reps: Sequence[int]) -> dict | None:
    """None if ``reps`` is a transversal of the side for every conjugate of S."""
    G = S.parent
    for C in conjugates(S):
        defect = transversal_defect(C, side, reps)
        if defect is not None:
            return {"conjugate": [G.labels[a] for a in C.elements], **defect}
    return None


def is_universal(S: Subgroup, side: str, reps: Sequence[int]) -> bool:
    return universality_defect(S, side, reps) is None


# ------------------------------------------------------------ Construction 1


def construct1_right(S: Subgroup, partition: TransversalPartition) -> CayleySudokuTable:
    """Columns: right cosets of S.  Rows: parts L_1..L_k (left transversals)."""
    if partition.side != LEFT or partition.subgroup != S:
        raise ConstructionError("Construction 1R needs a partition into left transversals of S")
    defect = partition_defect(S, LEFT, partition.parts)
    if defect is not None:
        raise ConstructionError(f"Construction 1R hypothesis fails: {defect}", defect)
    cols = [c.elements for c in cosets(S, RIGHT)]
    return _finish(CayleySudokuTable.arrange(S.parent, partition.parts, cols))


def construct1_left(S: Subgroup, partition: TransversalPartition) -> CayleySudokuTable:
    """Rows: left cosets of S.  Columns: parts R_1..R_k (right transversals)."""
    if partition.side != RIGHT or partition.subgroup != S:
        raise ConstructionError("Construction 1L needs a partition into right transversals of S")
    defect = partition_defect(S, RIGHT, partition.parts)
    if defect is not None:
        raise ConstructionError(f"Construction 1L hypothesis fails: {defect}", defect)
    rows = [c.elements for c in cosets(S, LEFT)]
    return _finish(CayleySudokuTable.arrange(S.parent, rows, partition.parts))


def _finish(T: CayleySudokuTable) -> CayleySudokuTable:
    report = verify_sudoku(T)
    if not report:
        raise ConsistencyError(f"construction hypothesis held but the table fails: {report}")
    return T


# ------------------------------------------------------------ Construction 2


def find_universal_transversal(
    S: Subgroup, side: str, cap: int = DEFAULT_NODE_CAP
) -> UniversalTransversal | None:
    """Lexicographically least transversal of every conjugate of S at once.

    Backtracking over elements in ascending index order, with one bitmask of
    already-hit cosets per distinct conjugate.  Any solution can be translated
    (left by r^-1 for left cosets, right for right cosets) to one containing
    the identity, so only identity-rooted branches are explored.  Returns None
    when the search space is exhausted; ResourceLimitError after ``cap`` nodes.
    """
    _check_side(side)
    G = S.parent
    if G.order > 10**4:
        raise ResourceLimitError("group too large for universal transversal search", 10**4)
    labellings = [coset_labelling(C, side) for C in conjugates(S)]
    # bit masks per element: one bit per (conjugate, coset) pair
    m = S.index
    masks = [0] * G.order
    for g in G.elements:
        bits = 0
        for k, where in enumerate(labellings):
            bits |= 1 << (k * m + where[g])
        masks[g] = bits
    order = list(G.elements)
    order.remove(G.identity)
    chosen = [G.identity]
    nodes = [0]

    def extend(start: int, used: int) -> bool:
        if len(chosen) == m:
            return True
        need = m - len(chosen)
        for pos in range(start, len(order) - need + 1):
            nodes[0] += 1
            if nodes[0] > cap:
                raise ResourceLimitError("universal transversal search exceeded node cap", cap)
            g = order[pos]
            if masks[g] & used:
                continue
            chosen.append(g)
            if extend(pos + 1, used | masks[g]):
                return True
            chosen.pop()
        return False

    if not extend(0, masks[G.identity]):
        return None
    return UniversalTransversal(S, side, tuple(sorted(chosen)))


def certify_universal(S: Subgroup, side: str, reps: Sequence[int]) -> UniversalTransversal:
    defect = universality_defect(S, side, reps)
    if defect is not None:
        raise ConstructionError(f"not a universal {side} transversal: {defect}", defect)
    return UniversalTransversal(S, side, tuple(reps))


def translate_transversal_partition(R: UniversalTransversal) -> TransversalPartition:
    """Parts s·R (right side) or R·s (left side), one per s in S, each certified."""
    S = R.subgroup
    G = S.parent
    parts = []
    for s in S.elements:
        if R.side == RIGHT:
            part = tuple(sorted(G.mul(s, r) for r in R.reps))
        else:
            part = tuple(sorted(G.mul(r, s) for r in R.reps))
        defect = universality_defect(S, R.side, part)
        if defect is not None:
            raise ConsistencyError(f"translate by {G.labels[s]} is not universal: {defect}")
        parts.append(part)
    if sorted(a for p in parts for a in p) != list(G.elements):
        raise ConsistencyError("translates of a universal transversal do not partition G")
    return TransversalPartition(S, R.side, tuple(parts))


def _check_universal_parts(S: Subgroup, side: str, partition: TransversalPartition, name: str) -> None:
    if partition.side != side or partition.subgroup != S:
        raise ConstructionError(f"Construction {name} needs {side} transversals of S")
    defect = partition_defect(S, side, partition.parts)
    if defect is None:
        for i, part in enumerate(partition.parts):
            defect = universality_defect(S, side, part)
            if defect is not None:
                defect = {"part": i, **defect}
                break
    if defect is not None:
        raise ConstructionError(f"Construction {name} hypothesis fails: {defect}", defect)


def construct2_left(S: Subgroup, partition: TransversalPartition) -> CayleySudokuTable:
    """Columns: left cosets of S.  Rows: parts that are left transversals of every S^g."""
    _check_universal_parts(S, LEFT, partition, "2L")
    cols = [c.elements for c in cosets(S, LEFT)]
    return _finish(CayleySudokuTable.arrange(S.parent, partition.parts, cols))


def construct2_right(S: Subgroup, partition: TransversalPartition) -> CayleySudokuTable:
    """Rows: right cosets of S.  Columns: parts that are right transversals of every S^g."""
    _check_universal_parts(S, RIGHT, partition, "2R")
    rows = [c.elements for c in cosets(S, RIGHT)]
    return _finish(CayleySudokuTable.arrange(S.parent, rows, partition.parts))


# ------------------------------------------------------------ Construction 3


def construct3(
    A: Subgroup,
    inner: CayleySudokuTable,
    left_reps: Transversal,
    right_reps: Transversal,
) -> CayleySudokuTable:
    """Extend a Cayley-Sudoku table of A to one of G.

    ``inner`` is a table over ``A.as_group`` (element i of it is
    ``A.elements[i]``).  Columns: blocks C_i·r_j for j = 1..t, i = 1..k.
    Rows: for each inner row part R_b one block l_1R_b, ..., l_tR_b.
    """
    G = A.parent
    if inner.group is not A.as_group:
        raise ConstructionError("inner table must be over A.as_group")
    report = verify_sudoku(inner)
    if not report:
        raise ConstructionError("inner table is not a Cayley-Sudoku table", {"report": str(report)})
    for reps, side in ((left_reps, LEFT), (right_reps, RIGHT)):
        if reps.subgroup != A or reps.side != side:
            raise ConstructionError(f"expected {side} coset representatives of A")
        defect = transversal_defect(A, side, reps.reps)
        if defect is not None:
            raise ConstructionError(f"{side} representatives are not a transversal: {defect}", defect)
    emb = A.elements
    C_parts = [[emb[x] for x in part] for part in inner.col_parts()]
    R_parts = [[emb[x] for x in part] for part in inner.row_parts()]
    cols = [[G.mul(c, r) for c in C] for r in right_reps.reps for C in C_parts]
    rows = [[G.mul(l, x) for l in left_reps.reps for x in R] for R in R_parts]
    return _finish(CayleySudokuTable.arrange(G, rows, cols))
