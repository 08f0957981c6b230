"""
Tests for the verification suites and their determinism.
"""
import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent))

from src.config import DEFAULT_SUITES
from src.hochschild import calculus
from src.provenance import ManifestStatus, RunConfig
from src.services import IDENTITIES, AlgebraPipeline, AlgebraRequest, VerificationService


def _bundle(config, **request):
    return AlgebraPipeline(config).build(AlgebraRequest(**request))


def _run_config(config, suites):
    return RunConfig(source={}, field='Q', max_degree=config['verify']['max_degree'],
                     budget=config['engine']['budget'], seed=config['sampling']['seed'], suites=list(suites))


def _statuses(results):
    return {r.name: r.status for r in results}


def test_every_suite_documents_its_identity():
    assert set(IDENTITIES) == set(DEFAULT_SUITES)


def test_selected_suites(small_config):
    service = VerificationService(small_config)
    assert service.selected_suites(['theta', 'structure']) == ['structure', 'theta']
    with pytest.raises(ValueError, match="Unknown suite"):
        service.selected_suites(['nonsense'])


def test_request_validation():
    with pytest.raises(ValueError):
        AlgebraRequest()
    with pytest.raises(ValueError):
        AlgebraRequest(family='torus')


def test_dual_numbers_pass(small_config):
    service = VerificationService(small_config)
    results = service.run(_bundle(small_config, family='truncated', m=2))
    statuses = _statuses(results)
    assert ManifestStatus.FAIL not in statuses.values(), [r.errors for r in results if r.errors]
    assert statuses['structure'] == ManifestStatus.PASS
    assert statuses['twist_homotopy'] == ManifestStatus.PASS
    assert statuses['homotopy'] == ManifestStatus.SKIPPED


def test_nonsymmetric_algebra_passes(small_config):
    service = VerificationService(small_config)
    bundle = _bundle(small_config, family='nakayama', v=2)
    suites = ['twist_homotopy', 'hh_nu', 'bv_identity', 'delta_squared', 'theta', 'delta_prime']
    results = service.run(bundle, suites)
    for result in results:
        assert result.status in (ManifestStatus.PASS, ManifestStatus.PARTIAL), (result.name, result.errors)


def test_sign_error_in_coboundary_is_caught(small_config, monkeypatch):
    original = calculus.coboundary
    monkeypatch.setattr(calculus, 'coboundary', lambda f: original(f).scale(-1))
    service = VerificationService(small_config)
    bundle = _bundle(small_config, family='nakayama', v=2)
    (result,) = service.run(bundle, ['twist_homotopy'])
    assert result.status == ManifestStatus.FAIL
    assert result.errors


def test_seeded_rerun_is_byte_identical(small_config):
    suites = ['twist_homotopy', 'euler_bracket', 'gerstenhaber']
    reports = []
    for _ in range(2):
        service = VerificationService(small_config)
        bundle = _bundle(small_config, family='truncated', m=3)
        manifest = service.verify([bundle], _run_config(small_config, suites))
        reports.append(manifest.to_json())
    assert reports[0] == reports[1]


def test_suite_sampling_is_independent_of_selection(small_config):
    service = VerificationService(small_config)
    bundle = _bundle(small_config, family='truncated', m=3)
    alone = service.run(bundle, ['gerstenhaber'])[0]
    together = [r for r in service.run(bundle, ['euler_bracket', 'gerstenhaber']) if r.name == 'gerstenhaber'][0]
    assert alone.to_dict() == together.to_dict()


def test_threaded_run_matches_sequential(small_config):
    suites = ['structure', 'euler_bracket', 'hh_nu']
    bundle = _bundle(small_config, family='truncated', m=2)
    sequential = VerificationService(small_config).run(bundle, suites)
    threaded_config = dict(small_config, engine=dict(small_config['engine'], n_jobs=2))
    threaded = VerificationService(threaded_config).run(bundle, suites)
    assert [r.to_dict() for r in sequential] == [r.to_dict() for r in threaded]


def test_budget_overrun_is_skipped(small_config):
    config = dict(small_config, engine=dict(small_config['engine'], budget=8))
    service = VerificationService(config)
    (result,) = service.run(_bundle(config, family='truncated', m=3), ['hh_nu'])
    assert result.status in (ManifestStatus.SKIPPED, ManifestStatus.PARTIAL)
    assert result.warnings


def test_dnr_structure_and_homotopy(small_config):
    service = VerificationService(small_config)
    bundle = _bundle(small_config, family='dnr', n=4, r=1)
    statuses = _statuses(service.run(bundle, ['structure', 'homotopy', 'euler_bracket']))
    assert set(statuses.values()) <= {ManifestStatus.PASS, ManifestStatus.PARTIAL}, statuses


def test_delta_eps1_on_r41(small_config):
    service = VerificationService(small_config)
    bundle = _bundle(small_config, family='dnr', n=4, r=1)
    (result,) = service.run(bundle, ['delta_eps1'])
    assert result.status == ManifestStatus.PASS, result.errors
