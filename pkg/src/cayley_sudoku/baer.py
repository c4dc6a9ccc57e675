"""Coset multiplication on right cosets and the Construction 2R equivalence.

For fixed right coset representatives r_1..r_m of S, Sr_i · Sr_j := Sr_ir_j.
The table is a quasigroup exactly when {r_i} is a right transversal of every
conjugate of S, which is also exactly when the column of blocks headed by
{r_i} in a Construction 2R layout satisfies the sudoku condition.

``baer_equivalence_check`` evaluates those three conditions by separate code
paths (sudoku verification, conjugate-by-conjugate transversal test, coset
multiplication) and insists they agree.  Left-handed versions go through the
opposite group, where left cosets become right cosets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConsistencyError, ConstructionError
from .group import RIGHT, FiniteGroup, Subgroup, Transversal, _check_side, make_transversal
from .sudoku_table import CayleySudokuTable, verify_sudoku


@dataclass(frozen=True)
class CosetMultiplicationTable:
    subgroup: Subgroup
    reps: Transversal
    table: tuple[tuple[int, ...], ...]


def _right_coset_position(G: FiniteGroup, members: frozenset[int], reps: Sequence[int], x: int) -> int:
    # x lies in S r_i iff x r_i^-1 is in S
    for i, r in enumerate(reps):
        if G.mul(x, G.inverse[r]) in members:
            return i
    raise ConstructionError("representatives do not cover every right coset")


def _transport(S: Subgroup, side: str) -> Subgroup:
    _check_side(side)
    if side == RIGHT:
        return S
    return Subgroup(S.parent.opposite, S.elements)


def coset_quasigroup(S: Subgroup, reps: Sequence[int], side: str = RIGHT) -> CosetMultiplicationTable:
    """Entry (i, j) is the position of the coset containing r_i r_j among Sr_1..Sr_m."""
    S = _transport(S, side)
    G = S.parent
    R = make_transversal(S, RIGHT, reps)
    members = S.element_set
    table = tuple(
        tuple(_right_coset_position(G, members, R.reps, G.mul(ri, rj)) for rj in R.reps)
        for ri in R.reps
    )
    return CosetMultiplicationTable(S, R, table)


def is_quasigroup_table(T: CosetMultiplicationTable) -> bool:
    m = len(T.table)
    symbols = set(range(m))
    rows_ok = all(set(row) == symbols for row in T.table)
    cols_ok = all({T.table[i][j] for i in range(m)} == symbols for j in range(m))
    return rows_ok and cols_ok


def _universal_by_conjugates(S: Subgroup, reps: Sequence[int]) -> tuple[bool, dict | None]:
    """Check {r} against the right cosets of g^-1 S g for every g in G."""
    G = S.parent
    m = G.order // S.order
    if len(reps) != m:
        return False, {"kind": "size", "expected": m, "got": len(reps)}
    for g in G.elements:
        gi = G.inverse[g]
        conj = {G.mul(G.mul(gi, s), g) for s in S.elements}
        for a, r in enumerate(reps):
            r_inv = G.inverse[r]
            for r2 in reps[a + 1 :]:
                if G.mul(r2, r_inv) in conj:
                    return False, {
                        "g": G.labels[g],
                        "same_coset": [G.labels[r], G.labels[r2]],
                    }
    return True, None


@dataclass(frozen=True)
class BaerReport:
    sudoku: tuple[bool, ...]
    universal: tuple[bool, ...]
    quasigroup: tuple[bool, ...]
    witnesses: dict = field(default_factory=dict)

    @property
    def verdicts(self) -> tuple[bool, bool, bool]:
        return all(self.sudoku), all(self.universal), all(self.quasigroup)

    def to_dict(self) -> dict:
        a, b, c = self.verdicts
        return {
            "sudoku": a,
            "universal_transversal": b,
            "quasigroup": c,
            "parts": [
                {"part": i, "sudoku": x, "universal_transversal": y, "quasigroup": z}
                for i, (x, y, z) in enumerate(zip(self.sudoku, self.universal, self.quasigroup))
            ],
            "witnesses": self.witnesses,
        }


def baer_equivalence_check(S: Subgroup, parts: Sequence[Sequence[int]], side: str = RIGHT) -> BaerReport:
    """Evaluate, per part: (a) sudoku column, (b) universal transversal, (c) quasigroup.

    ``parts`` must partition G into transversals of S of the given side.
    Raises ConsistencyError if the three verdicts differ for any part.
    """
    S = _transport(S, side)
    G = S.parent
    parts = [tuple(p) for p in parts]
    if sorted(a for p in parts for a in p) != list(G.elements):
        raise ConstructionError("parts do not partition the group")
    for p in parts:
        make_transversal(S, RIGHT, p)

    # (a) lay out Construction 2R without checking its hypothesis, then verify
    rows = []
    seen: set[int] = set()
    for g in G.elements:
        if g not in seen:
            coset = sorted(G.mul(s, g) for s in S.elements)
            seen.update(coset)
            rows.append(coset)
    table = CayleySudokuTable.arrange(G, rows, parts)
    report = verify_sudoku(table, exhaustive=True)
    bad_cols = {f.col_block for f in report.failures}
    sudoku = tuple(j not in bad_cols for j in range(len(parts)))

    # (b) and (c)
    universal = []
    quasi = []
    witnesses: dict = {}
    for j, p in enumerate(parts):
        ok, wit = _universal_by_conjugates(S, p)
        universal.append(ok)
        qt = coset_quasigroup(S, p)
        quasi.append(is_quasigroup_table(qt))
        if not ok:
            witnesses.setdefault("universal_transversal", {})[j] = wit
    for f in report.failures:
        witnesses.setdefault("sudoku", {}).setdefault(f.col_block, f.describe(G))

    result = BaerReport(sudoku, tuple(universal), tuple(quasi), witnesses)
    for j, trio in enumerate(zip(sudoku, universal, quasi)):
        if len(set(trio)) != 1:
            raise ConsistencyError(f"part {j}: sudoku/universal/quasigroup verdicts disagree: {trio}")
    return result
