"""
Tests for the cohomology engine: HH dimensions, coboundary witnesses,
class arithmetic, Theta and the induced BV operator.
"""
import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent))

from src.algebra import Automorphism, center, euler_derivation
from src.hochschild import Cochain, coboundary, is_normalized_at, linear_combination, random_cochain
from src.linalg.fields import PrimeField
from src.services import CohomologyEngine
from src.utils.errors import DegreeTooLargeError, InapplicableError, NotACocycleError
from src.zoo import build_dnr, ground_field, matrix_algebra, truncated_poly


def _engine(zoo, budget=None):
    config = {'engine': {'budget': budget}} if budget else {}
    return CohomologyEngine(zoo, config)


def test_ground_field_is_separable():
    engine = _engine(ground_field())
    assert [engine.hh_dim(n) for n in range(4)] == [1, 0, 0, 0]


def test_matrix_algebra_is_separable():
    engine = _engine(matrix_algebra(2))
    assert [engine.hh_dim(n) for n in range(3)] == [1, 0, 0]


@pytest.mark.parametrize("field,expected", [
    (None, [2, 1, 1, 1, 1]),
    (PrimeField(3), [2, 1, 1, 1, 1]),
    (PrimeField(2), [2, 2, 2, 2, 2]),
])
def test_dual_numbers_dimensions(field, expected):
    zoo = truncated_poly(2) if field is None else truncated_poly(2, field)
    engine = _engine(zoo)
    assert [engine.hh_dim(n) for n in range(5)] == expected


def test_cubic_dimensions(cubic):
    engine = _engine(cubic)
    assert [engine.hh_dim(n) for n in range(3)] == [3, 2, 2]
    assert _engine(truncated_poly(3, PrimeField(3))).hh_dim(1) == 3


@pytest.mark.parametrize("fixture", ["nakayama2", "cubic"])
def test_hh0_is_center(request, fixture):
    zoo = request.getfixturevalue(fixture)
    assert _engine(zoo).hh_dim(0) == len(center(zoo.algebra))


def test_delta_matrices_compose_to_zero(nakayama2):
    engine = _engine(nakayama2)
    for n in range(2):
        product = engine.delta_matrix(n + 1).matmul(engine.delta_matrix(n))
        assert product.nnz == 0
        assert product.shape == (4 ** (n + 3), 4 ** (n + 1))


def test_budget_is_enforced(cubic):
    engine = _engine(cubic, budget=10)
    with pytest.raises(DegreeTooLargeError) as excinfo:
        engine.hh(2)
    assert excinfo.value.budget == 10


def test_coboundary_witness(nakayama2, rng):
    engine = _engine(nakayama2)
    f = coboundary(random_cochain(nakayama2.algebra, 1, rng))
    witness = engine.is_coboundary(f)
    assert witness is not None
    assert engine.cochain_vector(coboundary(witness)) == engine.cochain_vector(f)


def test_cocycle_outside_coboundaries(dual_numbers, cubic):
    engine = _engine(dual_numbers)
    e = euler_derivation(dual_numbers.algebra, dual_numbers.gradings['x_degree'])
    assert engine.is_coboundary(e) is None
    assert not engine.class_of(e).is_zero()
    with pytest.raises(NotACocycleError):
        _engine(cubic).is_coboundary(Cochain.identity(cubic.algebra))


def test_degree_zero_coboundaries(dual_numbers):
    engine = _engine(dual_numbers)
    zero_witness = engine.is_coboundary(Cochain.zero(dual_numbers.algebra, 0))
    assert zero_witness is not None and zero_witness.degree == 0
    assert engine.is_coboundary(Cochain.from_element(dual_numbers.algebra.one())) is None


def test_class_arithmetic(cubic, rng):
    engine = _engine(cubic)
    e = euler_derivation(cubic.algebra, cubic.gradings['x_degree'])
    shifted = linear_combination([(1, e), (1, coboundary(random_cochain(cubic.algebra, 0, rng)))])
    x = engine.class_of(e)
    assert engine.class_of(shifted) == x
    assert engine.same_class(e, shifted)
    assert (x - x).is_zero()
    assert x.scale(2) == x + x


def test_cup_with_unit_class(cubic):
    engine = _engine(cubic)
    e = euler_derivation(cubic.algebra, cubic.gradings['x_degree'])
    x = engine.class_of(e)
    one = engine.class_of(Cochain.from_element(cubic.algebra.one()))
    assert x.cup(one) == x
    assert one.cup(x) == x
    with pytest.raises(InapplicableError):
        one.bracket(one)


def test_twist_by_identity_fixes_classes(cubic):
    engine = _engine(cubic)
    identity = Automorphism.identity(cubic.algebra)
    basis = engine.hh(1)
    expected = [tuple(1 if i == j else 0 for i in range(basis.dim)) for j in range(basis.dim)]
    assert engine.twist_action(identity, 1) == expected
    assert engine.hh_up(identity, 1).dim == basis.dim
    assert engine.theta(identity, 1).bijective


def test_theta_bijective_for_nakayama_cycle(nakayama2):
    engine = _engine(nakayama2)
    for n in range(3):
        theta = engine.theta(nakayama2.nu, n)
        assert theta.bijective, n
        assert theta.source.dim == theta.fixed_dim


def test_theta_r42_over_rationals():
    zoo = build_dnr(4, 2)
    engine = _engine(zoo)
    for n in range(2):
        theta = engine.theta(zoo.nu, n)
        assert theta.bijective, n


def test_hh_up_in_dividing_characteristic():
    zoo = build_dnr(4, 2, PrimeField(2))
    engine = _engine(zoo)
    basis = engine.hh_up(zoo.nu, 1)
    assert basis.label == "HH^1^nu"
    assert basis.dim == len(basis.representatives)


def test_bv_on_dual_numbers(dual_numbers):
    engine = _engine(dual_numbers)
    zero_degree = engine.bv_matrix(0)
    assert zero_degree.target is None and zero_degree.rows == []
    matrix = engine.bv_matrix(1)
    assert len(matrix.rows) == 2 and len(matrix.rows[0]) == 1
    assert not matrix.is_zero
    # Delta of the Euler derivation is the unit
    e = euler_derivation(dual_numbers.algebra, dual_numbers.gradings['x_degree'])
    x = engine.class_of(e, dual_numbers.nu)
    one = engine.class_of(Cochain.from_element(dual_numbers.algebra.one()), dual_numbers.nu)
    assert engine.induced_bv_on_class(x) == one
    with pytest.raises(InapplicableError):
        engine.induced_bv_on_class(one)


def test_normalized_representatives(nakayama2):
    assert _engine(nakayama2).exhaustive_limit == 2 ** 16
    sampled = CohomologyEngine(nakayama2, {'engine': {'exhaustive_check_limit': 0}})
    for engine in (_engine(nakayama2), sampled):
        for n in (1, 2):
            classes = engine.hh_up(nakayama2.nu, n)
            for i in range(classes.dim):
                f = engine.normalized_representative(classes.basis_class(i))
                assert all(is_normalized_at(f, t) for t in Cochain.zero(nakayama2.algebra, n - 1).all_tuples())


@pytest.mark.parametrize("fixture,top", [("dual_numbers", 3), ("nakayama2", 2)])
def test_delta_squares_to_zero_on_classes(request, fixture, top):
    zoo = request.getfixturevalue(fixture)
    engine = _engine(zoo)
    for n in range(2, top + 1):
        upper, lower = engine.bv_matrix(n), engine.bv_matrix(n - 1)
        for j in range(upper.source.dim):
            column = [row[j] for row in upper.rows]
            composite = [sum((lower.rows[i][k] * column[k] for k in range(len(column))), 0)
                         for i in range(len(lower.rows))]
            assert not any(composite), (n, j)


@pytest.mark.parametrize("fixture,total", [("dual_numbers", 3), ("nakayama2", 2)])
def test_bv_identity_on_basis_pairs(request, fixture, total):
    zoo = request.getfixturevalue(fixture)
    engine = _engine(zoo)
    nu = zoo.nu
    for n in range(total + 1):
        for m in range(total + 1 - n):
            xs = engine.hh_up(nu, n)
            ys = engine.hh_up(nu, m)
            for i in range(xs.dim):
                for j in range(ys.dim):
                    report = engine.check_bv_identity(xs.basis_class(i), ys.basis_class(j))
                    assert report['valid'], report['errors']
