"""
Tests for Frobenius forms and the Nakayama automorphism.
"""
import math
import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent))

from src.frobenius import build_frobenius, check_frobenius, is_symmetric, nakayama_order
from src.linalg.fields import PrimeField
from src.utils.errors import DimensionMismatchError, NotFrobeniusError
from src.zoo import matrix_algebra, nakayama_cycle


def test_truncated_poly_is_symmetric(cubic):
    assert is_symmetric(cubic.frobenius)
    assert nakayama_order(cubic.frobenius) == 1
    assert check_frobenius(cubic.frobenius)['valid']


def test_matrix_algebra_trace_form():
    zoo = matrix_algebra(2)
    assert is_symmetric(zoo.frobenius)
    assert check_frobenius(zoo.frobenius)['valid']


@pytest.mark.parametrize("v,loewy_length", [(2, 2), (3, 2), (2, 3)])
def test_nakayama_cycle_rotates_vertices(v, loewy_length):
    zoo = nakayama_cycle(v, loewy_length=loewy_length)
    report = check_frobenius(zoo.frobenius)
    assert report['valid'], report['violations'][:5]
    # nu shifts by -(L-1) on a cycle of length v
    shift = (loewy_length - 1) % v
    expected = 1 if shift == 0 else v // math.gcd(v, shift)
    assert nakayama_order(zoo.frobenius) == expected
    assert is_symmetric(zoo.frobenius) == (expected == 1)


def test_dual_basis(nakayama2):
    frobenius = nakayama2.frobenius
    dim = nakayama2.algebra.dim
    for k in range(dim):
        for i in range(dim):
            expected = 1 if i == k else 0
            assert frobenius.pairing(frobenius.dual_basis[k], {i: 1}) == expected


def test_nakayama_relation(nakayama2):
    frobenius = nakayama2.frobenius
    nu = frobenius.nakayama
    dim = nakayama2.algebra.dim
    for a in range(dim):
        for b in range(dim):
            assert frobenius.pairing({a: 1}, {b: 1}) == frobenius.pairing({b: 1}, nu.image(a))


def test_degenerate_form_rejected(dual_numbers):
    with pytest.raises(NotFrobeniusError) as excinfo:
        build_frobenius(dual_numbers.algebra, [1, 0])
    assert excinfo.value.rank == 1


def test_eps_length_checked(dual_numbers):
    with pytest.raises(DimensionMismatchError):
        build_frobenius(dual_numbers.algebra, [0, 1, 0])


def test_order_in_positive_characteristic():
    zoo = nakayama_cycle(2, PrimeField(3))
    assert nakayama_order(zoo.frobenius) == 2
    assert nakayama_order(zoo.frobenius, bound=1) is None
