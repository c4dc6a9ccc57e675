"""Cayley-Sudoku tables of the additive group of GF(p^2) from field multiplication.

Elements a + b·t are stored as the index b·p + a, where t is a root of the
monic irreducible quadratic t^2 + c1·t + c0.  The prime subfield F = {a + 0t}
is the subgroup, with coset representatives c_i = i·t.  For x outside F,
the sets (F + c_i)·x partition the field into transversals of F, giving the
table L_x with column blocks F + c_i and row blocks (F + c_i)·x.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import ConstructionError
from .group import FiniteGroup, Subgroup
from .sudoku_table import CayleySudokuTable, LatinSquare, are_orthogonal


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class QuadraticField:
    p: int
    modulus_poly: tuple[int, int]  # (c0, c1) for t^2 + c1 t + c0

    @property
    def order(self) -> int:
        return self.p * self.p

    @property
    def elements(self) -> range:
        return range(self.order)

    def split(self, x: int) -> tuple[int, int]:
        return x % self.p, x // self.p

    def join(self, a: int, b: int) -> int:
        return (b % self.p) * self.p + a % self.p

    def add(self, x: int, y: int) -> int:
        (a, b), (c, d) = self.split(x), self.split(y)
        return self.join(a + c, b + d)

    def neg(self, x: int) -> int:
        a, b = self.split(x)
        return self.join(-a, -b)

    def mul(self, x: int, y: int) -> int:
        # (a + bt)(c + dt) = ac + (ad + bc)t + bd t^2, with t^2 = -c1 t - c0
        (a, b), (c, d) = self.split(x), self.split(y)
        c0, c1 = self.modulus_poly
        bd = b * d
        return self.join(a * c - bd * c0, a * d + b * c - bd * c1)

    def in_subfield(self, x: int) -> bool:
        return x < self.p

    def label(self, x: int) -> str:
        a, b = self.split(x)
        if b == 0:
            return str(a)
        tpart = "t" if b == 1 else f"{b}t"
        return tpart if a == 0 else f"{a}+{tpart}"

    @cached_property
    def additive_group(self) -> FiniteGroup:
        n = self.order
        table = [[self.add(x, y) for y in range(n)] for x in range(n)]
        return FiniteGroup(
            n,
            labels=[self.label(x) for x in range(n)],
            identity=0,
            inverse=[self.neg(x) for x in range(n)],
            table=table,
            spec=f"gfp2:{self.p}",
        )

    @cached_property
    def subfield(self) -> Subgroup:
        return Subgroup(self.additive_group, tuple(range(self.p)))

    def coset_reps(self) -> list[int]:
        """c_i = i·t for i = 0..p-1."""
        return [self.join(0, i) for i in range(self.p)]

    def multiplicative_generator(self) -> int | None:
        n = self.order
        for g in range(1, n):
            x, seen = 1, set()
            while x not in seen:
                seen.add(x)
                x = self.mul(x, g)
            if len(seen) == n - 1:
                return g
        return None


def make_field(p: int) -> QuadraticField:
    """GF(p^2) using the least irreducible t^2 + c1 t + c0 in (c0, c1) order."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > 13:
        raise ValueError("fields are limited to p <= 13")
    for c0 in range(p):
        for c1 in range(p):
            if all((t * t + c1 * t + c0) % p for t in range(p)):
                return QuadraticField(p, (c0, c1))
    raise AssertionError(f"no irreducible quadratic over GF({p})")


def pedersen_vis_table(K: QuadraticField, x: int) -> CayleySudokuTable:
    """The table L_x, computed straight from field arithmetic."""
    if K.in_subfield(x):
        raise ConstructionError(f"{K.label(x)} lies in the subfield F", {"x": K.label(x)})
    F = range(K.p)
    cols = [[K.add(f, c) for f in F] for c in K.coset_reps()]
    rows = [[K.mul(K.add(f, c), x) for f in F] for c in K.coset_reps()]
    row_labels = tuple(r for part in rows for r in part)
    col_labels = tuple(c for part in cols for c in part)
    body = tuple(tuple(K.add(r, c) for c in col_labels) for r in row_labels)
    q = K.p
    blocks = tuple((i * q, (i + 1) * q) for i in range(q))
    return CayleySudokuTable(K.additive_group, row_labels, col_labels, blocks, blocks, body)


def row_partition(K: QuadraticField, x: int) -> list[tuple[int, ...]]:
    """The parts (F + c_i)·x in order."""
    return [tuple(K.mul(K.add(f, c), x) for f in range(K.p)) for c in K.coset_reps()]


@dataclass(frozen=True)
class MolsFamily:
    field: QuadraticField
    xs: tuple[int, ...]
    tables: tuple[CayleySudokuTable, ...]
    orthogonal: tuple[tuple[bool, ...], ...]

    def all_pairs_orthogonal(self) -> bool:
        return all(self.orthogonal[i][j] for i, j in combinations(range(len(self.xs)), 2))

    def to_dict(self) -> dict:
        labels = [self.field.label(x) for x in self.xs]
        return {
            "field": {"p": self.field.p, "modulus": list(self.field.modulus_poly)},
            "x": labels,
            "orthogonal": [list(r) for r in self.orthogonal],
            "pairs": len(self.xs) * (len(self.xs) - 1) // 2,
            "all_pairs_orthogonal": self.all_pairs_orthogonal(),
        }


def mols_family(K: QuadraticField) -> MolsFamily:
    """Every L_x for x outside F, in index order, with pairwise orthogonality."""
    xs = tuple(x for x in K.elements if not K.in_subfield(x))
    tables = tuple(pedersen_vis_table(K, x) for x in xs)
    squares = [LatinSquare(K.order, T.body) for T in tables]
    ortho = tuple(
        tuple(are_orthogonal(squares[i], squares[j]) for j in range(len(xs)))
        for i in range(len(xs))
    )
    return MolsFamily(K, xs, tables, ortho)
