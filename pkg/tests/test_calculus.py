"""
Tests for the cochain calculus: signs, products, twists, normalization
and the BV operator.
"""
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.append(str(Path(__file__).parent.parent))

from src.algebra import Automorphism, euler_derivation
from src.hochschild import (
    Cochain,
    bracket,
    bv_delta,
    circ,
    circ_i,
    coboundary,
    cup,
    degeneracy,
    delta_prime,
    homogeneous_component,
    is_normalized_at,
    linear_combination,
    normalize,
    normalize_with_witness,
    nu_average,
    random_cochain,
    random_homogeneous_cochain,
    twist,
)
from src.linalg.fields import PrimeField
from src.utils.errors import (
    AveragingUndefinedError,
    IndexRangeError,
    InapplicableError,
    MissingFrobeniusError,
    NotACocycleError,
    NotInvariantError,
    ParentMismatchError,
)
from src.zoo import nakayama_cycle, truncated_poly


def assert_same(f: Cochain, g: Cochain):
    assert f.degree == g.degree
    witness = f.differs_at(g, f.all_tuples())
    assert witness is None, f"{f.name} and {g.name} differ at {witness}"


def _shear(zoo):
    return Automorphism.from_images(zoo.algebra, [{0: 1}, {1: 1, 2: 1}, {2: 1}], name="shear")


def test_coboundary_of_element(dual_numbers):
    algebra = dual_numbers.algebra
    x = algebra.basis_element(1)
    df = coboundary(Cochain.from_element(x))
    # (dz)(a) = a z - z a vanishes in a commutative algebra
    assert_same(df, Cochain.zero(algebra, 1))


def test_coboundary_of_identity(cubic):
    d_id = coboundary(Cochain.identity(cubic.algebra))
    # (d id)(a, b) = ab
    assert d_id.evaluate((1, 1)) == {2: Fraction(1)}
    assert d_id.evaluate((1, 2)) == {}


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32), st.integers(min_value=0, max_value=2))
def test_coboundary_squares_to_zero(seed, degree):
    algebra = truncated_poly(3).algebra
    f = random_cochain(algebra, degree, np.random.default_rng(seed))
    assert_same(coboundary(coboundary(f)), Cochain.zero(algebra, degree + 2))


def test_coboundary_squares_to_zero_nonsymmetric(nakayama2, rng):
    f = random_cochain(nakayama2.algebra, 1, rng)
    assert_same(coboundary(coboundary(f)), Cochain.zero(nakayama2.algebra, 3))


@pytest.mark.parametrize("n,m", [(0, 1), (1, 1), (1, 2)])
def test_cup_leibniz(cubic, rng, n, m):
    f = random_cochain(cubic.algebra, n, rng)
    g = random_cochain(cubic.algebra, m, rng)
    left = coboundary(cup(f, g))
    right = linear_combination([(1, cup(coboundary(f), g)), ((-1) ** n, cup(f, coboundary(g)))])
    assert_same(left, right)


def test_bracket_of_derivations_is_commutator(cubic, rng):
    f = random_cochain(cubic.algebra, 1, rng)
    g = random_cochain(cubic.algebra, 1, rng)
    commutator = Cochain.from_rule(
        cubic.algebra, 1, lambda t: g.evaluate_on([f.evaluate(t)]), name="gf",
    )
    expected = linear_combination([(1, circ(f, g)), (-1, commutator)])
    assert_same(bracket(f, g), expected)


@pytest.mark.parametrize("n,m", [(1, 2), (2, 2), (0, 2)])
def test_bracket_graded_antisymmetry(nakayama2, rng, n, m):
    f = random_cochain(nakayama2.algebra, n, rng)
    g = random_cochain(nakayama2.algebra, m, rng)
    sign = 1 if (n - 1) * (m - 1) % 2 else -1
    assert_same(bracket(f, g), bracket(g, f).scale(sign))


def test_bracket_of_cocycles_is_cocycle(cubic, rng):
    f = coboundary(random_cochain(cubic.algebra, 1, rng))
    e = euler_derivation(cubic.algebra, cubic.gradings['x_degree'])
    assert_same(coboundary(bracket(f, e)), Cochain.zero(cubic.algebra, 3))


def test_euler_bracket_scales_by_internal_degree(cubic, rng):
    grading = cubic.gradings['x_degree']
    e = euler_derivation(cubic.algebra, grading)
    for q in (-1, 0, 1):
        f = random_homogeneous_cochain(cubic.algebra, 2, grading, q, rng)
        assert_same(bracket(f, e), f.scale(q))


def test_homogeneous_component_splits(cubic, rng):
    grading = cubic.gradings['x_degree']
    f = random_cochain(cubic.algebra, 1, rng)
    parts = [(1, homogeneous_component(f, grading, q)) for q in range(-2, 3)]
    assert_same(linear_combination(parts), f)


def test_circle_signs_on_multiplication(cubic):
    # mu o mu is the associator
    identity = Cochain.identity(cubic.algebra)
    mu = cup(identity, identity)
    assert circ_i(mu, mu, 1).evaluate((1, 1, 0)) == {2: 1}
    assert circ_i(mu, mu, 2).evaluate((1, 1, 0)) == {2: 1}
    associator = circ(mu, mu)
    assert all(not associator.evaluate(t) for t in associator.all_tuples())
    square = bracket(mu, mu)
    assert all(not square.evaluate(t) for t in square.all_tuples())
    with pytest.raises(IndexRangeError):
        circ_i(mu, mu, 3)


@settings(max_examples=8, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32), st.tuples(*[st.sampled_from([1, 2])] * 3))
def test_bracket_graded_jacobi(seed, degrees):
    algebra = truncated_poly(3).algebra
    rng = np.random.default_rng(seed)
    f, g, h = (random_cochain(algebra, d, rng) for d in degrees)
    terms = []
    for a, b, c in ((f, g, h), (g, h, f), (h, f, g)):
        terms.append((_sign_of((a.degree - 1) * (c.degree - 1)), bracket(a, bracket(b, c))))
    jacobiator = linear_combination(terms)
    assert_same(jacobiator, Cochain.zero(algebra, sum(degrees) - 2))


def _sign_of(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_circ_with_identity(cubic, rng, n):
    f = random_cochain(cubic.algebra, n, rng)
    identity = Cochain.identity(cubic.algebra)
    for i in range(1, n + 1):
        assert_same(circ_i(f, identity, i), f)


@pytest.mark.parametrize("n", [1, 2])
def test_circ_with_unit_inserts_one(nakayama2, rng, n):
    algebra = nakayama2.algebra
    f = random_cochain(algebra, n, rng)
    unit = Cochain.from_element(algebra.one())
    for i in range(1, n + 1):
        g = circ_i(f, unit, i)
        assert g.degree == n - 1
        for t in g.all_tuples():
            vectors = [{k: 1} for k in t[:i - 1]] + [algebra.unit_vector] + [{k: 1} for k in t[i - 1:]]
            assert g.evaluate(t) == f.evaluate_on(vectors), (i, t)


def test_degree_zero_products_rejected(dual_numbers):
    z = Cochain.from_element(dual_numbers.algebra.one())
    with pytest.raises(InapplicableError):
        bracket(z, z)
    with pytest.raises(InapplicableError):
        circ(z, z)


def test_mismatched_parents(dual_numbers, cubic):
    with pytest.raises(ParentMismatchError):
        cup(Cochain.identity(dual_numbers.algebra), Cochain.identity(cubic.algebra))
    with pytest.raises(ParentMismatchError):
        twist(Cochain.identity(cubic.algebra), Automorphism.identity(dual_numbers.algebra))


def test_twist_by_identity(cubic, rng):
    f = random_cochain(cubic.algebra, 2, rng)
    assert_same(twist(f, Automorphism.identity(cubic.algebra)), f)


def test_twist_commutes_with_coboundary(cubic, rng):
    sigma = _shear(cubic)
    f = random_cochain(cubic.algebra, 1, rng)
    assert_same(coboundary(twist(f, sigma)), twist(coboundary(f), sigma))


def test_degeneracy_range(cubic):
    g = Cochain.identity(cubic.algebra)
    with pytest.raises(IndexRangeError):
        degeneracy(g, 1)


def test_normalize_with_witness(nakayama2, rng):
    algebra = nakayama2.algebra
    f = coboundary(random_cochain(algebra, 1, rng))
    normalized, witness = normalize_with_witness(f)
    assert witness.degree == 1
    assert_same(linear_combination([(1, f), (-1, normalized)]), coboundary(witness))
    for t in Cochain.zero(algebra, 1).all_tuples():
        assert is_normalized_at(normalized, t)


def test_normalize_degree_zero(dual_numbers):
    z = Cochain.from_element(dual_numbers.algebra.one())
    assert normalize_with_witness(z) == (z, None)


def test_normalize_checks_invariance_and_cocycle(cubic):
    e = euler_derivation(cubic.algebra, cubic.gradings['x_degree'])
    with pytest.raises(NotInvariantError):
        normalize(e, sigma=_shear(cubic))
    with pytest.raises(NotACocycleError):
        normalize(Cochain.identity(cubic.algebra), sigma=Automorphism.identity(cubic.algebra))


def test_normalize_checks_every_tuple_within_limit(cubic):
    # 1 -> x^2, else 0: df vanishes on (x^2, b) but not on (1, 1)
    g = Cochain(cubic.algebra, 1, table={(0,): {2: 1}}, name="g")
    sigma = Automorphism.identity(cubic.algebra)
    normalize(g, sigma=sigma, tuples=[(2,)])
    with pytest.raises(NotACocycleError):
        normalize(g, sigma=sigma, tuples=[(2,)], exhaustive_limit=10 ** 4)
    normalize(g, sigma=sigma, tuples=[(2,)], exhaustive_limit=8)


def test_bv_delta_on_identity(dual_numbers):
    delta = bv_delta(Cochain.identity(dual_numbers.algebra), dual_numbers.frobenius)
    assert delta.degree == 0
    assert delta.value == dual_numbers.algebra.one()


def test_bv_delta_on_euler(cubic):
    e = euler_derivation(cubic.algebra, cubic.gradings['x_degree'])
    assert bv_delta(e, cubic.frobenius).value == 2 * cubic.algebra.one()


def test_bv_delta_zero_in_degree_zero(cubic):
    z = Cochain.from_element(cubic.algebra.basis_element(1))
    assert_same(bv_delta(z, cubic.frobenius), Cochain.zero(cubic.algebra, 0))


def test_bv_delta_needs_frobenius(cubic):
    with pytest.raises(MissingFrobeniusError):
        bv_delta(Cochain.identity(cubic.algebra), None)


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 1)])
def test_delta_prime_splits_delta_symmetric(cubic, rng, n, m):
    f = random_cochain(cubic.algebra, n, rng)
    g = random_cochain(cubic.algebra, m, rng)
    split = linear_combination([
        (1, delta_prime(f, g, cubic.frobenius)),
        ((-1) ** (n * m), delta_prime(g, f, cubic.frobenius)),
    ])
    assert_same(bv_delta(cup(f, g), cubic.frobenius), split)


def test_delta_prime_splits_delta_for_invariant_factor(nakayama2, rng):
    frobenius = nakayama2.frobenius
    f = random_cochain(nakayama2.algebra, 1, rng)
    g = nu_average(random_cochain(nakayama2.algebra, 1, rng), frobenius)
    split = linear_combination([(1, delta_prime(f, g, frobenius)), (-1, delta_prime(g, f, frobenius))])
    assert_same(bv_delta(cup(f, g), frobenius), split)


def test_nu_average_is_invariant(nakayama2, rng):
    frobenius = nakayama2.frobenius
    assert frobenius.nakayama.order() == 2
    average = nu_average(random_cochain(nakayama2.algebra, 2, rng), frobenius)
    assert_same(twist(average, frobenius.nakayama), average)


def test_nu_average_undefined_when_characteristic_divides_order(rng):
    zoo = nakayama_cycle(2, PrimeField(2))
    f = random_cochain(zoo.algebra, 1, rng)
    with pytest.raises(AveragingUndefinedError):
        nu_average(f, zoo.frobenius)
