"""
Tests for exact scalars and sparse elimination.
"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.append(str(Path(__file__).parent.parent))

from src.linalg import (
    QQ,
    EchelonForm,
    PrimeField,
    Residue,
    SparseMatrix,
    inverse,
    kernel_basis,
    membership_solve,
    parse_field,
    rank,
)
from src.utils.errors import FieldMismatchError, InvalidFieldError


def test_parse_field():
    assert parse_field("Q") is QQ
    assert parse_field("Fp:3") == PrimeField(3)
    assert parse_field({"Fp": 5}).characteristic == 5


@pytest.mark.parametrize("descriptor", ["Fp:4", "Fp:x", "R", {"p": 3}, 7])
def test_parse_field_rejects(descriptor):
    with pytest.raises(InvalidFieldError):
        parse_field(descriptor)


def test_residue_arithmetic():
    f5 = PrimeField(5)
    a, b = f5(3), f5(4)
    assert a + b == f5(2)
    assert a * b == 2
    assert a / b == f5(2)
    assert (a ** -1) * a == f5.one()
    assert f5(Fraction(1, 2)) == f5(3)
    with pytest.raises(ZeroDivisionError):
        f5.zero().inverse()


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        Residue(1, 3) + Residue(1, 5)
    with pytest.raises(FieldMismatchError):
        QQ(Residue(1, 3))
    with pytest.raises(FieldMismatchError):
        PrimeField(3)(Fraction(1, 3))


def test_serialize_scalars():
    assert QQ.serialize(Fraction(3, 4)) == "3/4"
    assert QQ.serialize(Fraction(2)) == 2
    assert PrimeField(3).serialize(PrimeField(3)(5)) == 2


def test_rank_and_kernel():
    m = SparseMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]], QQ)
    assert rank(m) == 2
    kernel = kernel_basis(m)
    assert len(kernel) == 1
    assert m.matvec(kernel[0]) == {}


def test_rank_depends_on_field():
    rows = [[1, 1], [1, -1]]
    assert rank(SparseMatrix.from_rows(rows, QQ)) == 2
    assert rank(SparseMatrix.from_rows(rows, PrimeField(2))) == 1


def test_membership_solve():
    m = SparseMatrix.from_rows([[1, 0], [0, 2], [1, 2]], QQ)
    x = membership_solve(m, [3, 4, 7])
    assert x == {0: Fraction(3), 1: Fraction(2)}
    assert membership_solve(m, [1, 0, 0]) is None


def test_inverse():
    m = SparseMatrix.from_rows([[2, 1], [1, 1]], QQ)
    assert m.matmul(inverse(m)) == SparseMatrix.identity(2, QQ)
    with pytest.raises(ZeroDivisionError):
        inverse(SparseMatrix.from_rows([[1, 1], [1, 1]], QQ))


def test_echelon_relations_are_tagged():
    echelon = EchelonForm(QQ)
    assert echelon.add({0: 1}, 'a') is None
    assert echelon.add({1: 1}, 'b') is None
    relation = echelon.add({0: 2, 1: 3}, 'c')
    assert relation == {'c': 1, 'a': -2, 'b': -3}
    assert echelon.solve({0: 1, 1: 1}) == {'a': 1, 'b': 1}


small_rows = st.lists(
    st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4),
    min_size=1, max_size=5,
)


@settings(max_examples=40, deadline=None)
@given(small_rows)
def test_rank_matches_sympy(rows):
    assert rank(SparseMatrix.from_rows(rows, QQ)) == sympy.Matrix(rows).rank()


@settings(max_examples=40, deadline=None)
@given(small_rows)
def test_kernel_vectors_annihilated(rows):
    m = SparseMatrix.from_rows(rows, PrimeField(3))
    kernel = kernel_basis(m)
    assert len(kernel) + rank(m) == m.ncols
    for v in kernel:
        assert m.matvec(v) == {}
