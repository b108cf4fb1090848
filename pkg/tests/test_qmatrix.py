from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given

from sullivan_forms.errors import DimensionMismatch, NotInvertible, PolySyntaxError
from sullivan_forms.qmatrix import QMatrix, format_matrix_list, parse_matrix, parse_matrix_list, rank
from strategies import invertible_matrices, matrices


def leibniz_det(m: QMatrix) -> Fraction:
    total = Fraction(0)
    for perm in itertools.permutations(range(m.n)):
        inversions = sum(1 for i, j in itertools.combinations(range(m.n), 2) if perm[i] > perm[j])
        term = Fraction(-1) ** inversions
        for i, j in enumerate(perm):
            term *= m[i, j]
        total += term
    return total


@given(matrices())
def test_det_matches_leibniz(m):
    assert m.det() == leibniz_det(m)


@given(matrices(), matrices())
def test_det_multiplicative(a, b):
    assert (a @ b).det() == a.det() * b.det()


@given(invertible_matrices())
def test_inverse(m):
    assert (m @ m.inverse()).is_identity()
    assert (m.inverse() @ m).is_identity()


def test_singular_inverse():
    with pytest.raises(NotInvertible):
        QMatrix([[1, 2], [2, 4]]).inverse()


def test_non_square():
    with pytest.raises(DimensionMismatch):
        QMatrix([[1, 2]])


def test_permutation_convention():
    # e_j -> e_{perm[j]}
    p = QMatrix.permutation([1, 2, 0])
    assert p.apply((1, 0, 0)) == (0, 1, 0)
    assert p.apply((0, 0, 1)) == (1, 0, 0)
    s = QMatrix.permutation([0, 1], [1, -1])
    assert s.apply((0, 1)) == (0, -1)


def test_random_invertible_is_seeded():
    a = QMatrix.random_invertible(3, random.Random(5))
    b = QMatrix.random_invertible(3, random.Random(5))
    assert a == b and a.det() != 0


def test_rank():
    assert rank([[1, 2, 3], [2, 4, 6], [0, 0, 1]]) == 2
    assert rank([[0, 0]]) == 0
    assert rank([]) == 0


@given(matrices())
def test_text_round_trip(m):
    assert parse_matrix(str(m)) == m
    assert parse_matrix_list(format_matrix_list([m, m.T])) == [m, m.T]


def test_parse_comments_and_blocks():
    text = "# generators\n0 1\n1 0\n\n1/2 0\n0 2  # diag\n"
    a, b = parse_matrix_list(text)
    assert a == QMatrix.permutation([1, 0])
    assert b == QMatrix.diag([Fraction(1, 2), 2])


@pytest.mark.parametrize("bad", ["1 2\n3", "1 x\n0 1", "1/0"])
def test_parse_errors(bad):
    with pytest.raises(PolySyntaxError):
        parse_matrix(bad)
