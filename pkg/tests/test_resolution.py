"""
Tests for the bimodule resolution of R(n, r): shapes, the contracting
homotopy, Psi and the generator cocycles.
"""
import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent))

from src.algebra import euler_derivation
from src.hochschild import coboundary, sample_tuples
from src.resolution import (
    HomotopyTable,
    PsiMap,
    ResolutionElement,
    augmentation,
    expected_length_degree,
    generator_catalogue,
    generator_spec,
    homotopy_D,
    homotopy_Dminus1,
    nu_conjugate_average,
    psi,
    qt_shape,
    realize_generator,
    shape_lookup,
    split_degree,
)
from src.utils.errors import DimensionMismatchError, GeneratorConditionError, ResolutionTableError


@pytest.fixture(scope="module")
def table41(dnr41):
    return HomotopyTable(dnr41)


@pytest.fixture(scope="module")
def table42(dnr42):
    return HomotopyTable(dnr42)


def test_q0_is_diagonal(dnr42):
    P = dnr42.presentation
    shape = qt_shape(P, 0)
    assert len(shape) == P.r * P.n
    assert all(s.left == s.right for s in shape)


def test_shapes_repeat_up_to_sigma(dnr42):
    P = dnr42.presentation
    for t in range(P.period):
        base = qt_shape(P, t)
        shifted = qt_shape(P, t + P.period)
        assert [P.sigma_vertex(s.left, 1) for s in base] == [s.left for s in shifted]
        assert [s.right for s in base] == [s.right for s in shifted]
        assert len(shape_lookup(P, t)) == len(base)


def test_split_degree(dnr41):
    P = dnr41.presentation
    assert split_degree(P, 0) == (0, 0)
    assert split_degree(P, P.period + 2) == (2, 1)
    with pytest.raises(ValueError):
        qt_shape(P, -1)


def test_homotopy_squares_to_zero(table42, dnr42):
    for t in range(2 * dnr42.presentation.period + 1):
        for generator in table42.left_generators(t):
            assert table42.apply(t + 1, table42.apply(t, generator)).is_zero(), (t, generator.terms)


def test_augmentation_splits(table41, dnr41):
    one = dnr41.algebra.field.one()
    for b in range(dnr41.algebra.dim):
        assert augmentation(dnr41, table41.d_minus_one({b: one})) == {b: one}


def test_functional_entry_points(table41, dnr41):
    one = dnr41.algebra.field.one()
    start = homotopy_Dminus1(table41, {0: one})
    assert start.degree == 0
    assert start.terms == table41.d_minus_one({0: one}).terms
    step = homotopy_D(table41, 0, start)
    assert step.degree == 1
    assert step.terms == table41.apply(0, start).terms


def test_coverage_report(table41):
    report = table41.coverage_report()
    assert report['valid']
    assert sum(report['cases'].values()) > 0


def test_table_needs_dnr(cubic):
    with pytest.raises(ResolutionTableError):
        HomotopyTable(cubic)


def test_apply_checks_degree(table41):
    with pytest.raises(DimensionMismatchError):
        table41.apply(1, ResolutionElement(0))


def test_psi_memo_and_arity(table41, dnr41):
    psi_map = PsiMap(table41)
    unit = dnr41.algebra.unit_vector
    assert augmentation(dnr41, psi(psi_map, 0, ())) == unit
    first = psi(psi_map, 2, (3, 5))
    assert len(psi_map) >= 1
    assert psi(psi_map, 2, (3, 5)) is first
    with pytest.raises(ValueError):
        psi(psi_map, 2, (3,))


def test_psi_cache_cap(table41):
    psi_map = PsiMap(table41, cache_cap=0)
    psi(psi_map, 1, (4,))
    assert len(psi_map) == 0
    assert psi_map.overflowed


def test_catalogue_small_degrees(dnr41, dnr42):
    names = {spec.name for spec in generator_catalogue(dnr41.presentation, 4, 0)}
    assert {'eps1', 'eps0[1]', 'eps0[4]', 'p_4'} <= names
    assert not any(name.startswith('eps0') for name in
                   (spec.name for spec in generator_catalogue(dnr42.presentation, 4, 0)))


def test_side_conditions_depend_on_characteristic(dnr41):
    P = dnr41.presentation
    with pytest.raises(GeneratorConditionError) as excinfo:
        generator_spec(P, 'g', 3, 0)
    assert excinfo.value.condition == "char k = 2 or l odd"
    assert generator_spec(P, 'g', 3, 2).name == "g_3"
    with pytest.raises(GeneratorConditionError):
        generator_spec(P, 'eps1', 2, 0)


def test_length_degree(dnr41):
    spec = generator_spec(dnr41.presentation, 'p', 4, 0)
    assert spec.F == 2
    assert expected_length_degree(dnr41.presentation, spec) == 6


def test_eps1_is_the_gamma_euler_derivation(table41, dnr41, rng):
    psi_map = PsiMap(table41)
    eps1 = realize_generator(psi_map, generator_spec(dnr41.presentation, 'eps1', 1, 0))
    euler = euler_derivation(dnr41.algebra, dnr41.gradings['gamma1'])
    for b in range(dnr41.algebra.dim):
        assert eps1.evaluate((b,)) == euler.evaluate((b,))
    d_eps1 = coboundary(eps1)
    for t in sample_tuples(dnr41.algebra, 2, 40, rng):
        assert d_eps1.evaluate(t) == {}


def test_realized_generator_is_cocycle(table41, dnr41, rng):
    psi_map = PsiMap(table41)
    spec = generator_spec(dnr41.presentation, 'p', 4, 0)
    d_x = coboundary(realize_generator(psi_map, spec))
    for t in sample_tuples(dnr41.algebra, 5, 20, rng):
        assert d_x.evaluate(t) == {}, (spec.name, t)


def test_nu_conjugate_average_trivial_for_symmetric(table41, dnr41):
    psi_map = PsiMap(table41)
    eps1 = realize_generator(psi_map, generator_spec(dnr41.presentation, 'eps1', 1, 0))
    assert nu_conjugate_average(dnr41, eps1) is eps1
