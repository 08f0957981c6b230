"""
Tests for the algebra zoo: R(n, r), the small fixtures and algebra files.
"""
import json
import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent))

from src.algebra import check_grading, preserves_grading, validate
from src.frobenius import check_frobenius, is_symmetric, nakayama_order
from src.linalg.fields import PrimeField
from src.utils.errors import AlgebraFileError, IndexRangeError
from src.zoo import (
    DnrPresentation,
    algebra_to_document,
    build_dnr,
    gamma_grading,
    length_grading,
    load_algebra,
    nakayama_cycle,
    nu_closed_form,
    save_algebra,
    truncated_poly,
)


@pytest.mark.parametrize("n,r,dim", [(4, 1, 18), (4, 2, 36), (5, 1, 28), (5, 2, 56)])
def test_dnr_dimension(n, r, dim):
    presentation = DnrPresentation(n, r)
    assert presentation.dim == dim == r * (n * n + n - 2)
    assert presentation.period == 2 * n - 3


@pytest.mark.parametrize("n,r", [(3, 1), (4, 0)])
def test_dnr_parameter_range(n, r):
    with pytest.raises(IndexRangeError):
        build_dnr(n, r)


def test_dnr_structure(dnr41, dnr42):
    for zoo in (dnr41, dnr42):
        assert validate(zoo.algebra)['valid']
        assert check_frobenius(zoo.frobenius)['valid']
        assert zoo.nu == nu_closed_form(zoo.presentation, zoo.algebra)
        assert zoo.sigma is not None
        for name in ('gamma1', 'gamma', 'length'):
            assert check_grading(zoo.algebra, zoo.gradings[name])['valid']


def test_dnr_gradings(dnr42):
    P = dnr42.presentation
    assert gamma_grading(P) == dnr42.gradings['gamma1']
    assert gamma_grading(P, None) == dnr42.gradings['gamma']
    length = length_grading(P)
    assert length.degrees.count(0) == len(P.vertices)
    assert preserves_grading(dnr42.nu, length)


def test_dnr_nakayama_order(dnr41, dnr42):
    assert is_symmetric(dnr41.frobenius)
    assert nakayama_order(dnr42.frobenius) == 2


def test_dnr_pairing_matches_duality(dnr42):
    bar = dnr42.presentation.bar
    frobenius = dnr42.frobenius
    dim = dnr42.algebra.dim
    for a in range(dim):
        for b in range(dim):
            expected = 1 if a == bar[b] else 0
            assert frobenius.pairing({a: 1}, {b: 1}) == expected


def test_dnr_over_prime_field():
    zoo = build_dnr(4, 1, PrimeField(3))
    assert zoo.algebra.dim == 18
    assert zoo.description == "R(4,1) over F3"


def test_small_fixture_guards():
    with pytest.raises(IndexRangeError):
        truncated_poly(1)
    with pytest.raises(IndexRangeError):
        nakayama_cycle(1)
    assert nakayama_cycle(2, loewy_length=3).algebra.dim == 6


def test_algebra_file_round_trip(dnr42, tmp_path):
    path = save_algebra(dnr42, tmp_path / "r42.json")
    loaded = load_algebra(path)
    assert loaded.algebra.dim == 36
    assert loaded.algebra.labels == dnr42.algebra.labels
    assert algebra_to_document(loaded)['mul'] == algebra_to_document(dnr42)['mul']
    assert set(loaded.gradings) == set(dnr42.gradings)
    assert 'sigma' in loaded.automorphisms
    assert loaded.frobenius is not None


def _write(tmp_path, document, name="algebra.json"):
    path = tmp_path / name
    path.write_text(json.dumps(document, indent=2), encoding='utf-8')
    return path


def _dual_numbers_document(field="Q"):
    return {
        'field': field,
        'dim': 2,
        'basis': ["1", "x"],
        'unit': [1, 0],
        'mul': [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]],
        'frobenius_eps': [0, 1],
    }


def test_load_minimal_document(tmp_path):
    zoo = load_algebra(_write(tmp_path, _dual_numbers_document()))
    assert zoo.algebra.dim == 2
    assert is_symmetric(zoo.frobenius)


@pytest.mark.parametrize("change,field", [
    ({'colour': 'red'}, None),
    ({'unit': ["2/4", 0]}, 'unit[0]'),
    ({'frobenius_eps': [1, 0]}, 'frobenius_eps'),
    ({'automorphisms': {'nu': [[1, 0], [0, 2]]}}, 'automorphisms.nu'),
    ({'gradings': {'bad': [1, 1]}}, 'gradings.bad'),
])
def test_load_rejects(tmp_path, change, field):
    document = _dual_numbers_document()
    document.update(change)
    with pytest.raises(AlgebraFileError) as excinfo:
        load_algebra(_write(tmp_path, document))
    assert excinfo.value.field == field


def test_prime_field_scalars_must_be_reduced(tmp_path):
    document = _dual_numbers_document(field={'Fp': 3})
    document['unit'] = [4, 0]
    with pytest.raises(AlgebraFileError) as excinfo:
        load_algebra(_write(tmp_path, document))
    assert excinfo.value.field == 'unit[0]'


def test_missing_key_and_syntax_errors(tmp_path):
    document = _dual_numbers_document()
    del document['mul']
    with pytest.raises(AlgebraFileError, match="missing required key 'mul'"):
        load_algebra(_write(tmp_path, document))

    broken = tmp_path / "broken.json"
    broken.write_text('{\n  "dim": 2,\n  "basis": [\n}', encoding='utf-8')
    with pytest.raises(AlgebraFileError) as excinfo:
        load_algebra(broken)
    assert excinfo.value.line == 4

    with pytest.raises(AlgebraFileError):
        load_algebra(tmp_path / "absent.json")
