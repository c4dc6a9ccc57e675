"""Finite quasigroups and the permutation groups generated by their translations.

Symbols are 1..n, as in printed tables; the translation permutations act on
0-based points, so symbol q is point q-1.  That conversion happens only in
this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .constructions import UniversalTransversal, universality_defect
from .errors import ConsistencyError, GroupError, ParseError
from .group import LEFT, RIGHT, FiniteGroup, from_permutations, is_transitive, stabilizer
from .perm import DEFAULT_CLOSURE_CAP, Permutation, generate_closure, is_even


@dataclass(frozen=True)
class Quasigroup:
    order: int
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def mul(self, a: int, b: int) -> int:
        """Product of 1-based symbols."""
        return self.table[a - 1][b - 1]


def from_latin_square(grid: Sequence[Sequence[int]]) -> Quasigroup:
    n = len(grid)
    symbols = set(range(1, n + 1))
    rows = []
    for i, row in enumerate(grid):
        row = tuple(int(x) for x in row)
        if len(row) != n:
            raise GroupError(f"row {i + 1} has {len(row)} entries, expected {n}", {"row": i + 1})
        rows.append(row)
    for i, row in enumerate(rows):
        seen: dict[int, int] = {}
        for j, x in enumerate(row):
            if x not in symbols:
                raise GroupError(f"cell ({i + 1}, {j + 1}) holds {x}, outside 1..{n}", {"cell": (i + 1, j + 1)})
            if x in seen:
                raise GroupError(
                    f"symbol {x} repeated in row {i + 1} (columns {seen[x] + 1} and {j + 1})",
                    {"row": i + 1, "columns": (seen[x] + 1, j + 1), "symbol": x},
                )
            seen[x] = j
    for j in range(n):
        seen = {}
        for i in range(n):
            x = rows[i][j]
            if x in seen:
                raise GroupError(
                    f"symbol {x} repeated in column {j + 1} (rows {seen[x] + 1} and {i + 1})",
                    {"column": j + 1, "rows": (seen[x] + 1, i + 1), "symbol": x},
                )
            seen[x] = i
    return Quasigroup(n, tuple(rows), tuple(str(i) for i in range(1, n + 1)))


def read_quasigroup_file(path) -> Quasigroup:
    """n lines of n whitespace-separated symbols, no border."""
    lines = [ln.split() for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
    try:
        grid = [[int(x) for x in ln] for ln in lines]
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return from_latin_square(grid)


def left_translation(Q: Quasigroup, ell: int) -> Permutation:
    """q -> ell·q."""
    return Permutation(tuple(x - 1 for x in Q.table[ell - 1]))


def right_translation(Q: Quasigroup, ell: int) -> Permutation:
    """q -> q·ell."""
    return Permutation(tuple(Q.table[q][ell - 1] - 1 for q in range(Q.order)))


def _translation_group(perms: list[Permutation], cap: int) -> FiniteGroup:
    G = from_permutations(generate_closure(perms, cap=cap))
    if not is_transitive(G):
        raise ConsistencyError("multiplication group of a quasigroup is not transitive")
    return G


def lmult(Q: Quasigroup, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    return _translation_group([left_translation(Q, l) for l in range(1, Q.order + 1)], cap)


def rmult(Q: Quasigroup, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    return _translation_group([right_translation(Q, l) for l in range(1, Q.order + 1)], cap)


def quasieg_transversal(
    Q: Quasigroup, which: str, c: int, group: FiniteGroup | None = None
) -> UniversalTransversal:
    """Translations as a universal transversal of the stabilizer of symbol c.

    Left translations give left representatives in LMult(Q); right
    translations give right representatives in RMult(Q).  The claim is
    checked against every conjugate of the stabilizer.
    """
    if which == LEFT:
        G = group if group is not None else lmult(Q)
        perms = [left_translation(Q, l) for l in range(1, Q.order + 1)]
    elif which == RIGHT:
        G = group if group is not None else rmult(Q)
        perms = [right_translation(Q, l) for l in range(1, Q.order + 1)]
    else:
        raise ValueError(f"which must be 'left' or 'right', got {which!r}")
    S = stabilizer(G, c - 1)
    reps = tuple(sorted(G.perm_index[p.images] for p in perms))
    defect = universality_defect(S, which, reps)
    if defect is not None:
        raise ConsistencyError(f"translations are not a universal {which} transversal: {defect}")
    return UniversalTransversal(S, which, reps)


# -------------------------------------------------------------- Q_n family


def make_qn(n: int) -> Quasigroup:
    """The order-n quasigroup built from four n/2 x n/2 subtables.

    Upper-left and lower-right hold 1..n/2, the other two n/2+1..n.  Rows of
    the lower-right subtable are successive right shifts of
    (1, 3, 4, ..., n/2, 2); rows of the other three are successive left shifts
    of their first row.
    """
    if n % 2 or n < 2:
        raise ValueError(f"Q_n needs an even n >= 2, got {n}")
    h = n // 2
    base = [1] + list(range(3, h + 1)) + ([2] if h >= 2 else [])
    grid = []
    for i in range(h):
        low = [(i + j) % h + 1 for j in range(h)]
        high = [h + (i + j) % h + 1 for j in range(h)]
        grid.append(low + high)
    for a in range(h):
        high = [h + (a + j) % h + 1 for j in range(h)]
        low = [base[(j - a) % h] for j in range(h)]
        grid.append(high + low)
    return from_latin_square(grid)


def qn_has_even_case(n: int) -> bool:
    """True when n > 2 and n ≡ 2 (mod 4), the setting with no regular subgroup in A_n."""
    return n > 2 and n % 4 == 2


def qn_lambda_formula(n: int, i: int, check: bool = True) -> Permutation:
    """Closed form of the left translation by i in Q_n.

    For i <= n/2 it is ((1..n/2)(n/2+1..n))^(i-1); otherwise
    (1, i)(2, i+1, 3, i+2, ..., n/2, i+n/2-1) with i+k reduced into n/2+1..n.
    With ``check`` the result is compared to the translation read off the table.
    """
    if n % 2 or n < 2:
        raise ValueError(f"n must be even, got {n}")
    if not 1 <= i <= n:
        raise ValueError(f"i must lie in 1..{n}")
    h = n // 2
    if i <= h:
        s = i - 1
        images = [(p + s) % h for p in range(h)] + [h + (p + s) % h for p in range(h)]
        perm = Permutation(tuple(images))
    else:
        def high(v: int) -> int:
            return h + (v - h - 1) % h + 1

        cycle = []
        for k in range(2, h + 1):
            cycle += [k, high(i + k - 1)]
        cycles = [(1, i)] + ([tuple(cycle)] if cycle else [])
        perm = Permutation.from_cycles([[p - 1 for p in c] for c in cycles], n)
    if check:
        table_perm = left_translation(make_qn(n), i)
        if table_perm != perm:
            raise ConsistencyError(f"lambda_{i} formula disagrees with Q_{n} table")
    return perm


def no_regular_subgroup_by_parity(generators: Sequence[Permutation]) -> bool:
    """True when every generator is even and the degree is 2 mod 4 (and > 2).

    Then the generated group lies in A_n; a regular subgroup of order n would
    hold a fixed-point-free involution, a product of n/2 transpositions, which
    is odd.  False means the argument does not apply, not that one exists.
    """
    if not generators:
        return False
    n = generators[0].degree
    return qn_has_even_case(n) and all(is_even(g) for g in generators)
