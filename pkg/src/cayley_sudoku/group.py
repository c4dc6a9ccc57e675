"""Finite groups over element indices 0..|G|-1.

Every group carries its operation table (rows are computed lazily for large
permutation groups), the identity index, inverses and display labels.
Permutation groups also keep ``element_perm`` so that stabilizers, orbits
and regularity can be asked about.  Element order for permutation groups is
``perm.sort_key``: identity first, then by number of transpositions, then by
cycle notation.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .errors import GroupError, ParseError, ResourceLimitError
from .perm import Permutation, parse_cycles, render_cycles, sort_key

LEFT = "left"
RIGHT = "right"
SIDES = (LEFT, RIGHT)

FULL_ASSOCIATIVITY_LIMIT = 128
ASSOCIATIVITY_SAMPLES = 10_000
MATERIALIZE_LIMIT = 5040
DEFAULT_SEARCH_CAP = 10**6


def _check_side(side: str) -> None:
    if side not in SIDES:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


class FiniteGroup:
    """A finite group whose elements are the indices ``0..order-1``."""

    def __init__(
        self,
        order: int,
        *,
        labels: Sequence[str],
        identity: int,
        inverse: Sequence[int],
        table: Sequence[Sequence[int]] | None = None,
        row_fn: Callable[[int], tuple[int, ...]] | None = None,
        element_perm: Sequence[Permutation] | None = None,
        spec: str | None = None,
    ) -> None:
        if order < 1:
            raise GroupError("a group has at least one element")
        if (table is None) == (row_fn is None):
            raise ValueError("give exactly one of table or row_fn")
        self.order = order
        self.labels = tuple(labels)
        self.identity = identity
        self.inverse = tuple(inverse)
        self.element_perm = tuple(element_perm) if element_perm is not None else None
        self.spec = spec
        self._rows: list[tuple[int, ...] | None]
        if table is not None:
            self._rows = [tuple(r) for r in table]
        else:
            self._rows = [None] * order
        self._row_fn = row_fn
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._label_index) != order:
            raise GroupError("element labels must be distinct")

    def __repr__(self) -> str:
        name = self.spec or "group"
        return f"<FiniteGroup {name} of order {self.order}>"

    def row(self, a: int) -> tuple[int, ...]:
        r = self._rows[a]
        if r is None:
            r = self._row_fn(a)
            self._rows[a] = r
        return r

    def mul(self, a: int, b: int) -> int:
        return self.row(a)[b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    @property
    def op(self) -> tuple[tuple[int, ...], ...]:
        """The full operation table (materialized on first use)."""
        return tuple(self.row(a) for a in range(self.order))

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def degree(self) -> int | None:
        if self.element_perm is None:
            return None
        return self.element_perm[0].degree

    @cached_property
    def perm_index(self) -> dict[tuple[int, ...], int]:
        if self.element_perm is None:
            raise GroupError(f"{self!r} is not a permutation group")
        return {p.images: i for i, p in enumerate(self.element_perm)}

    def label(self, a: int) -> str:
        return self.labels[a]

    def index_of(self, text: str) -> int:
        """Element index from its label, or from cycle notation for permutation groups."""
        text = text.strip()
        if text in self._label_index:
            return self._label_index[text]
        if self.element_perm is not None and text.startswith("("):
            p = parse_cycles(text, self.degree)
            try:
                return self.perm_index[p.images]
            except KeyError:
                raise ParseError(f"{text} is not an element of {self!r}") from None
        raise ParseError(f"unknown element label {text!r}")

    def conjugate(self, a: int, g: int) -> int:
        """g^-1 a g."""
        return self.mul(self.mul(self.inverse[g], a), g)

    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a in self.elements for b in range(a))

    @cached_property
    def opposite(self) -> FiniteGroup:
        """Same elements with the operation reversed: a*b := b·a."""
        op = self.op
        table = [[op[b][a] for b in self.elements] for a in self.elements]
        spec = f"op({self.spec})" if self.spec else None
        return FiniteGroup(
            self.order, labels=self.labels, identity=self.identity,
            inverse=self.inverse, table=table, spec=spec,
        )

    def validate(self, strict: bool = False) -> None:
        """Check Latin property, identity, inverses and associativity.

        Associativity is checked on every triple for order <= 128 (or when
        ``strict``) and on a fixed pseudo-random sample otherwise.
        """
        _validate_table(self.op, self.labels, strict=strict)


# ---------------------------------------------------------------- builders


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("Z_n needs n >= 1")
    if n > 10**4:
        raise ResourceLimitError("cyclic group too large", 10**4)
    return FiniteGroup(
        n,
        labels=[str(i) for i in range(n)],
        identity=0,
        inverse=[(-i) % n for i in range(n)],
        row_fn=lambda a: tuple((a + b) % n for b in range(n)),
        spec=f"Z{n}",
    )


def make_symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("S_n needs n >= 1")
    if n > 8:
        raise ResourceLimitError("symmetric group degree too large", 8)
    perms = [Permutation(p) for p in itertools.permutations(range(n))]
    return _perm_group(perms, spec=f"S{n}", check_closed=False)


def make_alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("A_n needs n >= 1")
    if n > 8:
        raise ResourceLimitError("alternating group degree too large", 8)
    perms = [Permutation(p) for p in itertools.permutations(range(n))]
    perms = [p for p in perms if sum(len(c) - 1 for c in p.cycles()) % 2 == 0]
    return _perm_group(perms, spec=f"A{n}", check_closed=False)


def make_dihedral(n: int) -> FiniteGroup:
    """Symmetries of a regular n-gon acting on its vertices (order 2n, n >= 3)."""
    from .perm import generate_closure

    if n < 3:
        raise GroupError("dihedral group needs n >= 3")
    rot = Permutation(tuple((i + 1) % n for i in range(n)))
    ref = Permutation(tuple((-i) % n for i in range(n)))
    group = from_permutations(generate_closure([rot, ref]))
    group.spec = f"D{n}"
    return group


def from_permutations(elements: Iterable[Permutation]) -> FiniteGroup:
    """Group of an explicit, composition-closed set of permutations."""
    perms = list(set(elements))
    if not perms:
        raise GroupError("empty element set")
    return _perm_group(perms, spec=None, check_closed=True)


def _perm_group(perms: list[Permutation], spec: str | None, check_closed: bool) -> FiniteGroup:
    degree = perms[0].degree
    if any(p.degree != degree for p in perms):
        raise GroupError("permutations have different degrees")
    perms.sort(key=sort_key)
    index = {p.images: i for i, p in enumerate(perms)}
    images = [p.images for p in perms]
    ident = tuple(range(degree))
    if ident not in index:
        raise GroupError("element set does not contain the identity")

    def row_fn(a: int) -> tuple[int, ...]:
        ga = images[a]
        out = []
        for b, hb in enumerate(images):
            key = tuple(hb[i] for i in ga)
            try:
                out.append(index[key])
            except KeyError:
                raise GroupError(
                    f"not closed: {render_cycles(perms[a])} * {render_cycles(perms[b])} is missing",
                    {"pair": (render_cycles(perms[a]), render_cycles(perms[b]))},
                ) from None
        return tuple(out)

    inverse = []
    for p in perms:
        inv = p.inverse().images
        if inv not in index:
            raise GroupError(
                f"not closed under inversion: {render_cycles(p)}",
                {"element": render_cycles(p)},
            )
        inverse.append(index[inv])
    group = FiniteGroup(
        len(perms),
        labels=[render_cycles(p) for p in perms],
        identity=index[ident],
        inverse=inverse,
        row_fn=row_fn,
        element_perm=perms,
        spec=spec,
    )
    if check_closed and group.order <= MATERIALIZE_LIMIT:
        group.op
    return group


def from_table(
    labels: Sequence[str], table: Sequence[Sequence[str]], strict: bool = False
) -> FiniteGroup:
    """Validated group from a label grid; the identity is located automatically."""
    labels = [str(s) for s in labels]
    n = len(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != n:
        raise GroupError("duplicate labels")
    if len(table) != n:
        raise GroupError(f"expected {n} rows, got {len(table)}")
    grid = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise GroupError(f"row {i} has {len(row)} entries, expected {n}", {"row": i})
        try:
            grid.append(tuple(index[str(x)] for x in row))
        except KeyError as exc:
            raise GroupError(f"row {i} contains unknown label {exc.args[0]!r}", {"row": i}) from None
    identity = _validate_table(grid, labels, strict=strict)
    inverse = [grid[a].index(identity) for a in range(n)]
    return FiniteGroup(n, labels=labels, identity=identity, inverse=inverse, table=grid)


def _validate_table(grid, labels, strict: bool = False) -> int:
    n = len(grid)
    full = set(range(n))
    for i in range(n):
        if set(grid[i]) != full:
            dup = _first_duplicate(grid[i])
            raise GroupError(
                f"row {labels[i]} is not a permutation of the elements",
                {"row": labels[i], "repeated": labels[dup] if dup is not None else None},
            )
    for j in range(n):
        col = [grid[i][j] for i in range(n)]
        if set(col) != full:
            dup = _first_duplicate(col)
            raise GroupError(
                f"column {labels[j]} is not a permutation of the elements",
                {"column": labels[j], "repeated": labels[dup] if dup is not None else None},
            )
    identity = None
    for e in range(n):
        if all(grid[e][x] == x and grid[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise GroupError("no identity element")
    if n <= FULL_ASSOCIATIVITY_LIMIT or strict:
        triples: Iterable[tuple[int, int, int]] = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(0)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for _ in range(ASSOCIATIVITY_SAMPLES)
        )
    for a, b, c in triples:
        if grid[grid[a][b]][c] != grid[a][grid[b][c]]:
            raise GroupError(
                f"not associative: ({labels[a]}*{labels[b]})*{labels[c]} != "
                f"{labels[a]}*({labels[b]}*{labels[c]})",
                {"triple": (labels[a], labels[b], labels[c])},
            )
    return identity


def _first_duplicate(seq) -> int | None:
    seen = set()
    for x in seq:
        if x in seen:
            return x
        seen.add(x)
    return None


def read_group_file(path) -> FiniteGroup:
    """Read a group file: first line the labels, then one table row per line."""
    from pathlib import Path

    lines = [ln.split() for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
    if not lines:
        raise ParseError(f"{path}: empty group file")
    labels, rows = lines[0], lines[1:]
    return from_table(labels, rows)


# -------------------------------------------------------- subgroups, cosets


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.elements == self.elements
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __contains__(self, a: int) -> bool:
        return a in self.element_set

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        labs = ", ".join(self.parent.labels[a] for a in self.elements)
        return f"Subgroup({{{labs}}})"

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.elements)

    def labels(self) -> list[str]:
        return [self.parent.labels[a] for a in self.elements]

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conjugate(s, g) in self.element_set for g in G.elements for s in self.elements)

    @cached_property
    def as_group(self) -> FiniteGroup:
        """The subgroup as a group in its own right; element i is ``elements[i]``."""
        G = self.parent
        pos = {a: i for i, a in enumerate(self.elements)}
        table = [[pos[G.mul(a, b)] for b in self.elements] for a in self.elements]
        perms = None
        if G.element_perm is not None:
            perms = [G.element_perm[a] for a in self.elements]
        return FiniteGroup(
            self.order,
            labels=self.labels(),
            identity=pos[G.identity],
            inverse=[pos[G.inverse[a]] for a in self.elements],
            table=table,
            element_perm=perms,
        )


def make_subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Wrap an element set, checking it is a subgroup."""
    elems = tuple(sorted(set(elements)))
    es = set(elems)
    if G.identity not in es:
        raise GroupError("subset does not contain the identity")
    for a in elems:
        if G.inverse[a] not in es:
            raise GroupError(f"not closed under inverses at {G.labels[a]}")
        for b in elems:
            if G.mul(a, b) not in es:
                raise GroupError(f"not closed: {G.labels[a]}*{G.labels[b]}")
    return Subgroup(G, elems)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(G.elements))


def _closure(
    G: FiniteGroup,
    gens: Iterable[int],
    accept: Callable[[int], bool] | None = None,
    max_size: int | None = None,
) -> set[int] | None:
    """Elements generated by ``gens``; None as soon as ``accept`` fails or size exceeds ``max_size``."""
    gens = list(dict.fromkeys(gens))
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.mul(x, g)
            if y not in seen:
                if accept is not None and not accept(y):
                    return None
                seen.add(y)
                if max_size is not None and len(seen) > max_size:
                    return None
                queue.append(y)
    return seen


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, tuple(sorted(_closure(G, gens))))


@dataclass(frozen=True)
class Coset:
    subgroup: Subgroup
    side: str
    elements: tuple[int, ...]

    @property
    def representative(self) -> int:
        return self.elements[0]

    def labels(self) -> list[str]:
        return [self.subgroup.parent.labels[a] for a in self.elements]


def coset_of(S: Subgroup, g: int, side: str) -> tuple[int, ...]:
    """gS for side='left', Sg for side='right', sorted."""
    _check_side(side)
    G = S.parent
    if side == LEFT:
        return tuple(sorted(G.mul(g, s) for s in S.elements))
    return tuple(sorted(G.mul(s, g) for s in S.elements))


def cosets(S: Subgroup, side: str) -> list[Coset]:
    """All cosets of one side, ordered by representative (the least index)."""
    _check_side(side)
    out = []
    seen: set[int] = set()
    for g in S.parent.elements:
        if g not in seen:
            elems = coset_of(S, g, side)
            seen.update(elems)
            out.append(Coset(S, side, elems))
    return out


def coset_labelling(S: Subgroup, side: str) -> tuple[int, ...]:
    """``result[g]`` is the position in ``cosets(S, side)`` of the coset containing g."""
    where = [0] * S.parent.order
    for i, c in enumerate(cosets(S, side)):
        for a in c.elements:
            where[a] = i
    return tuple(where)


def conjugate_subgroup(S: Subgroup, g: int) -> Subgroup:
    """S^g = g^-1 S g."""
    G = S.parent
    return Subgroup(G, tuple(sorted(G.conjugate(s, g) for s in S.elements)))


def conjugates(S: Subgroup) -> list[Subgroup]:
    """Distinct conjugates of S, in order of first appearance over g = 0, 1, ..."""
    out: dict[tuple[int, ...], Subgroup] = {}
    for g in S.parent.elements:
        C = conjugate_subgroup(S, g)
        out.setdefault(C.elements, C)
    return list(out.values())


@dataclass(frozen=True)
class Transversal:
    subgroup: Subgroup
    side: str
    reps: tuple[int, ...]


def transversal_defect(S: Subgroup, side: str, reps: Sequence[int]) -> dict | None:
    """None when ``reps`` meets every coset of the side exactly once, else a witness."""
    where = coset_labelling(S, side)
    cs = cosets(S, side)
    labels = S.parent.labels
    hit: dict[int, int] = {}
    for r in reps:
        c = where[r]
        if c in hit:
            return {
                "kind": "double-hit",
                "coset": [labels[a] for a in cs[c].elements],
                "elements": [labels[hit[c]], labels[r]],
            }
        hit[c] = r
    for i, c in enumerate(cs):
        if i not in hit:
            return {"kind": "missed", "coset": [labels[a] for a in c.elements]}
    return None


def make_transversal(S: Subgroup, side: str, reps: Sequence[int]) -> Transversal:
    defect = transversal_defect(S, side, reps)
    if defect is not None:
        raise GroupError(f"not a {side} transversal: {defect}", defect)
    return Transversal(S, side, tuple(reps))


def default_transversal(S: Subgroup, side: str) -> Transversal:
    """Coset representatives (least index of each coset), in coset order."""
    return Transversal(S, side, tuple(c.representative for c in cosets(S, side)))


# ------------------------------------------------------ permutation actions


def _require_perm(G: FiniteGroup) -> tuple[Permutation, ...]:
    if G.element_perm is None:
        raise GroupError(f"{G!r} is not a permutation group")
    return G.element_perm


def stabilizer(G: FiniteGroup, point: int) -> Subgroup:
    """Elements fixing ``point`` (0-based)."""
    perms = _require_perm(G)
    if not 0 <= point < G.degree:
        raise ValueError(f"point {point} outside 0..{G.degree - 1}")
    return Subgroup(G, tuple(i for i, p in enumerate(perms) if p.images[point] == point))


def orbit(G: FiniteGroup, point: int, elements: Iterable[int] | None = None) -> set[int]:
    perms = _require_perm(G)
    elems = G.elements if elements is None else elements
    return {perms[g].images[point] for g in elems}


def is_transitive(G: FiniteGroup, elements: Iterable[int] | None = None) -> bool:
    return len(orbit(G, 0, elements)) == G.degree


def is_regular(T: FiniteGroup | Subgroup) -> bool:
    """Transitive with trivial point stabilizers; then also |T| equals the degree."""
    if isinstance(T, Subgroup):
        G, elems = T.parent, list(T.elements)
    else:
        G, elems = T, list(T.elements)
    perms = _require_perm(G)
    degree = G.degree
    if not is_transitive(G, elems):
        return False
    stab = [g for g in elems if perms[g].images[0] == 0]
    if len(stab) != 1:
        return False
    if len(elems) != degree:
        raise AssertionError("regular group whose order differs from its degree")
    return True


def _bounded_subgroup_search(
    G: FiniteGroup,
    candidates: Sequence[int],
    accept: Callable[[int], bool],
    max_size: int,
    target: int,
    max_gens: int,
    cap: int,
    first_only: bool,
) -> list[Subgroup]:
    """Subgroups of order ``target`` generated by at most ``max_gens`` candidates.

    Every closure is cut off as soon as it produces an element failing
    ``accept`` or grows past ``max_size``; such generator sets cannot be
    extended into a valid subgroup, so their supersets are skipped.
    """
    found: dict[tuple[int, ...], Subgroup] = {}
    budget = [0]

    def close(gens: list[int]) -> set[int] | None:
        budget[0] += 1
        if budget[0] > cap:
            raise ResourceLimitError("subgroup search exceeded its budget", cap)
        return _closure(G, gens, accept=accept, max_size=max_size)

    layer: list[tuple[list[int], set[int], int]] = [([], {G.identity}, -1)]
    for _depth in range(max_gens):
        next_layer = []
        for gens, closed, last in layer:
            for pos in range(last + 1, len(candidates)):
                g = candidates[pos]
                if g in closed:
                    continue
                new = close(gens + [g])
                if new is None:
                    continue
                if len(new) == target:
                    key = tuple(sorted(new))
                    if key not in found:
                        found[key] = Subgroup(G, key)
                elif len(new) < target:
                    next_layer.append((gens + [g], new, pos))
        if first_only and found:
            break
        layer = next_layer
        if not layer:
            break
    return sorted(found.values(), key=lambda H: H.elements)


def find_complement(S: Subgroup, max_gens: int = 3, cap: int = DEFAULT_SEARCH_CAP) -> Subgroup | None:
    """A subgroup C with |C||S| = |G| and C ∩ S = 1, or None if there is none.

    Candidate complements are generated by up to ``max_gens`` elements: first
    singletons, then pairs, then triples.  Among the complements needing the
    fewest generators, the one with the lexicographically least element set
    is returned.
    """
    G = S.parent
    if G.order > 10**4:
        raise ResourceLimitError("group too large for complement search", 10**4)
    target = G.order // S.order
    if S.order == 1:
        return whole_group(G)
    if target == 1:
        return trivial_subgroup(G)
    members = S.element_set
    candidates = [g for g in G.elements if g not in members]
    found = _bounded_subgroup_search(
        G, candidates, accept=lambda x: x not in members, max_size=target,
        target=target, max_gens=max_gens, cap=cap, first_only=True,
    )
    return found[0] if found else None


def search_regular_subgroups(G: FiniteGroup, cap: int = DEFAULT_SEARCH_CAP) -> list[Subgroup]:
    """Every regular subgroup, found from fixed-point-free generator sets of size <= 3.

    All groups of order <= 8 are 3-generated, so for degree <= 8 the search
    is exhaustive.
    """
    perms = _require_perm(G)
    degree = G.degree
    if degree > 8:
        raise ResourceLimitError("regular-subgroup search limited to degree 8", 8)
    if G.order > 10**4:
        raise ResourceLimitError("group too large for regular-subgroup search", 10**4)
    if degree == 1:
        return [trivial_subgroup(G)]
    fpf = [g for g in G.elements if not perms[g].fixed_points()]
    semiregular = set(fpf) | {G.identity}
    found = _bounded_subgroup_search(
        G, fpf, accept=semiregular.__contains__, max_size=degree,
        target=degree, max_gens=3, cap=cap, first_only=False,
    )
    return [H for H in found if is_regular(H)]


def all_subgroups(G: FiniteGroup, cap: int = 10**5) -> list[Subgroup]:
    """Every subgroup, as joins of cyclic subgroups; sorted by (order, elements)."""
    cyclic = {tuple(sorted(_closure(G, [g]))) for g in G.elements}
    subs = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyclic:
                if set(C) <= set(H):
                    continue
                J = tuple(sorted(_closure(G, list(H) + list(C))))
                if J not in subs:
                    new.add(J)
        subs |= new
        if len(subs) > cap:
            raise ResourceLimitError("too many subgroups", cap)
        frontier = new
    return [Subgroup(G, e) for e in sorted(subs, key=lambda e: (len(e), e))]
