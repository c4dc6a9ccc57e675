from itertools import combinations

import pytest

from cayley_sudoku.constructions import construct1_right, make_partition
from cayley_sudoku.errors import ConstructionError
from cayley_sudoku.field_instances import make_field, mols_family, pedersen_vis_table, row_partition
from cayley_sudoku.group import LEFT, RIGHT, cosets
from cayley_sudoku.sudoku_table import LatinSquare, are_orthogonal, verify_sudoku


@pytest.mark.parametrize("p, modulus", [(2, (1, 1)), (3, (1, 0)), (5, (1, 1)), (7, (1, 0))])
def test_modulus_is_least_irreducible(p, modulus):
    K = make_field(p)
    assert K.modulus_poly == modulus
    c0, c1 = modulus
    assert all((t * t + c1 * t + c0) % p for t in range(p))
    # every smaller pair in (c0, c1) order has a root
    for a in range(p):
        for b in range(p):
            if (a, b) < modulus:
                assert any((t * t + b * t + a) % p == 0 for t in range(p))


@pytest.mark.parametrize("bad", [1, 4, 9, 17])
def test_make_field_rejects(bad):
    with pytest.raises(ValueError):
        make_field(bad)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_field_axioms_exhaustive(p):
    K = make_field(p)
    E = list(K.elements)
    for x in E:
        assert K.add(x, 0) == x and K.mul(x, 1) == x
        assert K.add(x, K.neg(x)) == 0
        if x:
            assert any(K.mul(x, y) == 1 for y in E)
        for y in E:
            assert K.mul(x, y) == K.mul(y, x)
            assert K.add(x, y) == K.add(y, x)
            for z in E:
                assert K.mul(x, K.add(y, z)) == K.add(K.mul(x, y), K.mul(x, z))
                assert K.mul(K.mul(x, y), z) == K.mul(x, K.mul(y, z))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_multiplicative_group_is_cyclic(p):
    K = make_field(p)
    g = K.multiplicative_generator()
    assert g is not None
    powers, x = set(), 1
    for _ in range(K.order - 1):
        x = K.mul(x, g)
        powers.add(x)
    assert powers == set(range(1, K.order))


def test_labels_and_t_squared():
    K = make_field(3)
    t = K.join(0, 1)
    assert K.label(t) == "t"
    assert K.label(K.join(2, 2)) == "2+2t"
    assert K.label(K.join(0, 2)) == "2t"
    # t^2 + 1 = 0 in GF(9)
    assert K.mul(t, t) == K.join(2, 0)


def test_subfield_and_reps():
    K = make_field(3)
    assert K.subfield.labels() == ["0", "1", "2"]
    assert [K.label(c) for c in K.coset_reps()] == ["0", "t", "2t"]
    for side in (LEFT, RIGHT):
        assert len(cosets(K.subfield, side)) == 3


@pytest.mark.parametrize("p", [2, 3, 5])
def test_pedersen_vis_equals_construction1_oracle(p):
    K = make_field(p)
    F = K.subfield
    for x in K.elements:
        if K.in_subfield(x):
            continue
        parts = row_partition(K, x)
        oracle = construct1_right(F, make_partition(F, LEFT, parts))
        T = pedersen_vis_table(K, x)
        assert (T.row_labels, T.col_labels, T.row_blocks, T.col_blocks, T.body) == (
            oracle.row_labels, oracle.col_labels, oracle.row_blocks, oracle.col_blocks, oracle.body)
        assert verify_sudoku(T)


def test_pedersen_vis_rejects_subfield_element():
    with pytest.raises(ConstructionError):
        pedersen_vis_table(make_field(3), 2)


@pytest.mark.parametrize("p, pairs", [(2, 1), (3, 15), (5, 190)])
def test_mols_family(p, pairs):
    K = make_field(p)
    fam = mols_family(K)
    assert len(fam.xs) == p * p - p
    doc = fam.to_dict()
    assert doc["pairs"] == pairs
    assert fam.all_pairs_orthogonal() and doc["all_pairs_orthogonal"]
    squares = [LatinSquare(K.order, T.body) for T in fam.tables]
    checked = 0
    for i, j in combinations(range(len(squares)), 2):
        A, B = squares[i], squares[j]
        cells = {(A.grid[r][c], B.grid[r][c]) for r in range(K.order) for c in range(K.order)}
        assert len(cells) == K.order**2
        assert are_orthogonal(A, B)
        checked += 1
    assert checked == pairs


def test_mols_diagonal_not_orthogonal():
    fam = mols_family(make_field(3))
    assert not any(fam.orthogonal[i][i] for i in range(len(fam.xs)))
