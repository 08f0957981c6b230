"""
Tests for algebras, automorphisms and gradings.
"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent))

from src.algebra import (
    Automorphism,
    FiniteDimAlgebra,
    Grading,
    center,
    check_grading,
    euler_derivation,
    multiply,
    preserves_grading,
    validate,
)
from src.linalg.fields import QQ, PrimeField
from src.utils.errors import AlgebraStructureError, InvalidAutomorphismError, InvalidGradingError, ParentMismatchError
from src.zoo import matrix_algebra, truncated_poly


def _broken_algebra():
    """x*x = y, x*y = 0, y*x = x: (xx)x != x(xx)."""
    mul = {(0, j): {j: 1} for j in range(3)}
    mul.update({(j, 0): {j: 1} for j in range(3)})
    mul[(1, 1)] = {2: 1}
    mul[(2, 1)] = {1: 1}
    return FiniteDimAlgebra(QQ, ["1", "x", "y"], {0: 1}, mul, name="broken")


def test_truncated_products(cubic):
    algebra = cubic.algebra
    x = algebra.basis_element(1)
    assert x * x == algebra.basis_element(2)
    assert (x * x * x).is_zero()
    assert algebra.one() * x == x
    assert (2 * x + x).terms == {1: Fraction(3)}


def test_multiply_matches_operator(cubic, dual_numbers):
    x = cubic.algebra.basis_element(1)
    assert multiply(x, x) == x * x
    with pytest.raises(ParentMismatchError):
        multiply(x, dual_numbers.algebra.basis_element(1))


def test_validate_accepts_zoo(cubic, nakayama2):
    for zoo in (cubic, nakayama2, matrix_algebra(2)):
        report = validate(zoo.algebra)
        assert report['valid'], report['errors']


def test_validate_reports_associativity():
    report = validate(_broken_algebra())
    assert not report['valid']
    assert ('associativity', 1, 1, 1) in report['violations']


def test_constructor_guards():
    with pytest.raises(AlgebraStructureError):
        FiniteDimAlgebra(QQ, [], {}, {})
    with pytest.raises(AlgebraStructureError):
        FiniteDimAlgebra(QQ, ["a", "a"], {0: 1}, {})


def test_center_dimensions(dual_numbers):
    assert len(center(dual_numbers.algebra)) == 2
    assert len(center(matrix_algebra(2).algebra)) == 1


def test_automorphism_order_depends_on_field():
    algebra = truncated_poly(2, PrimeField(3)).algebra
    doubling = Automorphism.from_images(algebra, [{0: 1}, {1: 2}], name="double")
    assert doubling.order() == 2
    assert doubling.power(2).is_identity()
    assert doubling.power(-1) == doubling

    rational = truncated_poly(2, QQ).algebra
    doubling_q = Automorphism.from_images(rational, [{0: 1}, {1: 2}], name="double")
    assert doubling_q.order(bound=10) is None


def test_invalid_automorphisms(dual_numbers):
    algebra = dual_numbers.algebra
    with pytest.raises(InvalidAutomorphismError):
        Automorphism.from_images(algebra, [{0: 1}, {0: 1, 1: 1}])
    with pytest.raises(InvalidAutomorphismError):
        Automorphism.from_images(algebra, [{0: 1}, {}])
    with pytest.raises(InvalidAutomorphismError):
        Automorphism.from_images(algebra, [{0: 2}, {1: 1}])


def test_automorphism_parent_checked(dual_numbers, cubic):
    sigma = Automorphism.identity(dual_numbers.algebra)
    with pytest.raises(ParentMismatchError):
        sigma(cubic.algebra.one())


def test_gradings(cubic):
    algebra = cubic.algebra
    assert check_grading(algebra, cubic.gradings['x_degree'])['valid']
    bad = Grading("bad", (0, 1, 3))
    report = check_grading(algebra, bad)
    assert not report['valid']
    with pytest.raises(InvalidGradingError):
        euler_derivation(algebra, bad)


def test_grading_rejects_unit_outside_degree_zero(cubic):
    algebra = cubic.algebra
    report = check_grading(algebra, Grading("shifted", (1, 2, 3)))
    assert not report['valid']
    assert report['unit_components'] == [('unit', algebra.labels[0], 1)]
    assert any('unit' in error for error in report['errors'])
    assert not report['warnings']
    with pytest.raises(InvalidGradingError):
        euler_derivation(algebra, Grading("shifted", (1, 2, 3)))


def test_euler_derivation_values(cubic):
    e = euler_derivation(cubic.algebra, cubic.gradings['x_degree'])
    assert e.evaluate((0,)) == {}
    assert e.evaluate((2,)) == {2: Fraction(2)}


def test_preserves_grading(cubic):
    algebra = cubic.algebra
    scaling = Automorphism.from_images(algebra, [{0: 1}, {1: 3}, {2: 9}], name="scale")
    assert preserves_grading(scaling, cubic.gradings['x_degree'])
    shear = Automorphism.from_images(algebra, [{0: 1}, {1: 1, 2: 1}, {2: 1}], name="shear")
    assert not preserves_grading(shear, cubic.gradings['x_degree'])
