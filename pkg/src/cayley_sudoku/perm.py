"""Permutations of {0, ..., n-1} composed left to right.

``compose(g, h)`` applies ``g`` first and then ``h``, so the image of a point
``i`` is ``h[g[i]]``.  Points are 0-based in memory and 1-based in cycle
notation, e.g. ``"(123)(456)"`` or ``"(1,4)(2,5,3,6)"``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParseError, ResourceLimitError

DEFAULT_CLOSURE_CAP = 10**6


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images!r} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-based cycles; points not mentioned are fixed."""
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i == j]

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point, sorted by that point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        return render_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({render_cycles(self)!r}, degree={self.degree})"


def compose(g: Permutation, h: Permutation) -> Permutation:
    """Return g followed by h."""
    if g.degree != h.degree:
        raise ValueError(f"degree mismatch: {g.degree} vs {h.degree}")
    hi = h.images
    return Permutation(tuple(hi[i] for i in g.images))


def parity(g: Permutation) -> str:
    """``"even"`` or ``"odd"``."""
    transpositions = sum(len(c) - 1 for c in g.cycles())
    return "even" if transpositions % 2 == 0 else "odd"


def is_even(g: Permutation) -> bool:
    return parity(g) == "even"


def sort_key(g: Permutation) -> tuple:
    """Canonical element order: fewest transpositions first, then by cycles.

    In S_3 this gives (1), (12), (13), (23), (123), (132).
    """
    cycles = g.cycles()
    return (sum(len(c) - 1 for c in cycles), tuple(cycles))


def render_cycles(g: Permutation) -> str:
    """1-based cycle notation; commas are omitted when the degree is at most 9."""
    cycles = g.cycles()
    if not cycles:
        return "(1)"
    sep = "" if g.degree <= 9 else ","
    return "".join("(" + sep.join(str(p + 1) for p in c) + ")" for c in cycles)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1,4)(2,5,3,6)"`` or ``"(14)(2536)"``.

    Without commas each digit is one point, which is only allowed for
    degree <= 9.  ``"()"``, ``"(1)"`` and the empty string are the identity.
    """
    images = list(range(degree))
    used: set[int] = set()
    pos = 0
    n = len(text)

    def skip_ws(p: int) -> int:
        while p < n and text[p].isspace():
            p += 1
        return p

    pos = skip_ws(pos)
    while pos < n:
        if text[pos] != "(":
            raise ParseError(f"expected '(' but found {text[pos]!r}", pos)
        close = text.find(")", pos + 1)
        if close < 0:
            raise ParseError("unclosed '('", pos)
        body = text[pos + 1 : close]
        if "(" in body:
            raise ParseError("nested '('", pos + 1 + body.index("("))
        cycle = _parse_cycle_body(body, degree, pos + 1)
        if len(cycle) > 1:
            for p in cycle:
                if p in used:
                    raise ParseError(f"point {p + 1} repeated", pos)
                used.add(p)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        pos = skip_ws(close + 1)
    return Permutation(tuple(images))


def _parse_cycle_body(body: str, degree: int, offset: int) -> list[int]:
    stripped = body.strip()
    if not stripped:
        return []
    if "," in stripped:
        tokens = [t.strip() for t in stripped.split(",")]
    elif len(stripped.split()) > 1:
        tokens = stripped.split()
    elif degree <= 9:
        tokens = list(stripped)
    else:
        tokens = [stripped]
    points = []
    for tok in tokens:
        if not tok.isdigit():
            raise ParseError(f"bad point {tok!r}", offset + max(body.find(tok), 0))
        p = int(tok)
        if not 1 <= p <= degree:
            raise ParseError(f"point {p} outside 1..{degree}", offset + body.find(tok))
        points.append(p - 1)
    if len(set(points)) != len(points):
        raise ParseError(f"repeated point in cycle ({body})", offset)
    return points


def generate_closure(
    generators: Iterable[Permutation], cap: int = DEFAULT_CLOSURE_CAP
) -> frozenset[Permutation]:
    """Breadth-first closure of ``generators`` under composition and inversion."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator to know the degree")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators have different degrees")
    gens = gens + [g.inverse() for g in gens]
    ident = Permutation.identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise ResourceLimitError("permutation group closure too large", cap)
                queue.append(y)
    return frozenset(seen)
