import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_sudoku.errors import ParseError, ResourceLimitError
from cayley_sudoku.perm import (
    Permutation,
    compose,
    generate_closure,
    parity,
    parse_cycles,
    render_cycles,
)
from paper_tables import LAMBDAS_Q6, RHOS_Q6


@st.composite
def perms(draw, degree=None):
    n = degree if degree is not None else draw(st.integers(1, 12))
    return Permutation(tuple(draw(st.permutations(range(n)))))


@st.composite
def perm_triples(draw):
    n = draw(st.integers(1, 9))
    return tuple(draw(perms(n)) for _ in range(3))


def p(text, degree):
    return parse_cycles(text, degree)


def test_compose_cyclic_of_order_three():
    assert compose(p("(123)", 3), p("(123)", 3)) == p("(132)", 3)


def test_compose_is_left_to_right():
    # 1 -(12)-> 2 -(13)-> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
    r = compose(p("(12)", 3), p("(13)", 3))
    assert [r(i) for i in range(3)] == [1, 2, 0]
    assert r == p("(123)", 3)


def test_compose_with_identity():
    g = p("(1,4)(2,5,3,6)", 6)
    assert compose(g, Permutation.identity(6)) == g


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(Permutation.identity(3), Permutation.identity(4))


@pytest.mark.parametrize(
    "text, degree, images",
    [
        ("(123)(456)", 6, (1, 2, 0, 4, 5, 3)),
        ("(1)", 6, (0, 1, 2, 3, 4, 5)),
        ("()", 3, (0, 1, 2)),
        ("(153426)", 6, (4, 5, 3, 1, 2, 0)),
        ("(1,4)(2,5,3,6)", 6, (3, 4, 5, 0, 2, 1)),
        ("(14)(2536)", 6, (3, 4, 5, 0, 2, 1)),
        (" ( 1 , 10 ) ", 10, (9, 1, 2, 3, 4, 5, 6, 7, 8, 0)),
    ],
)
def test_parse_cycles(text, degree, images):
    assert parse_cycles(text, degree).images == images


@pytest.mark.parametrize(
    "text, degree",
    [("(121)", 3), ("(12)(23)", 3), ("(14)", 3), ("(12", 3), ("12)", 3), ("((12))", 3), ("(1,a)", 3)],
)
def test_parse_cycles_rejects(text, degree):
    with pytest.raises(ParseError):
        parse_cycles(text, degree)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_cycles("(12)x", 3)
    assert info.value.position == 4


def test_render_matches_paper_notation():
    assert render_cycles(p("(2536)(14)", 6)) == "(14)(2536)"
    assert render_cycles(Permutation.identity(6)) == "(1)"
    assert render_cycles(p("(1,10)", 10)) == "(1,10)"


@pytest.mark.parametrize(
    "text, expected",
    [("(123)(456)", "even"), ("(14)(25)(36)", "odd"), ("(1)", "even")],
)
def test_parity(text, expected):
    assert parity(p(text, 6)) == expected


def test_paper_translation_parities():
    assert all(parity(p(t, 6)) == "even" for t in LAMBDAS_Q6)
    assert [parity(p(t, 6)) for t in RHOS_Q6] == ["even"] * 3 + ["odd"] * 3


def test_closure_of_q6_translations():
    assert len(generate_closure(p(t, 6) for t in LAMBDAS_Q6)) == 36
    assert len(generate_closure(p(t, 6) for t in RHOS_Q6)) == 18
    assert generate_closure([Permutation.identity(4)]) == {Permutation.identity(4)}


def test_closure_cap():
    with pytest.raises(ResourceLimitError, match="cap=100"):
        generate_closure([p("(12)", 6), p("(123456)", 6)], cap=100)


@given(perm_triples())
def test_compose_associative(triple):
    a, b, c = triple
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(perms())
def test_identity_and_inverse(g):
    e = Permutation.identity(g.degree)
    assert compose(e, g) == g == compose(g, e)
    assert compose(g, g.inverse()) == e == compose(g.inverse(), g)


@given(perms())
def test_render_parse_round_trip(g):
    assert parse_cycles(render_cycles(g), g.degree) == g


@given(st.integers(1, 9).flatmap(lambda n: st.tuples(perms(n), perms(n))))
def test_parity_is_a_homomorphism(pair):
    g, h = pair
    odd = {"even": 0, "odd": 1}
    assert odd[parity(compose(g, h))] == odd[parity(g)] ^ odd[parity(h)]


@settings(max_examples=30)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(perms(n), min_size=1, max_size=3)))
def test_closure_order_divides_factorial(gens):
    assert math.factorial(gens[0].degree) % len(generate_closure(gens)) == 0
