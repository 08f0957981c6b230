"""
Heavy acceptance runs on R(n, r). Deselected by default, run with ``pytest -m slow``.
"""
import json
import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent))

from app.cli import EXIT_OK, main
from src.linalg.fields import PrimeField
from src.provenance import ManifestStatus
from src.services import AlgebraPipeline, AlgebraRequest, CohomologyEngine, VerificationService
from src.zoo import build_dnr, truncated_poly

pytestmark = pytest.mark.slow

OK = (ManifestStatus.PASS, ManifestStatus.PARTIAL)


def _run(config, suites, **request):
    bundle = AlgebraPipeline(config).build(AlgebraRequest(**request))
    return {r.name: r for r in VerificationService(config).run(bundle, suites)}


@pytest.mark.parametrize("n,r", [(4, 1), (4, 2), (5, 1)])
def test_homotopy_over_two_periods(small_config, n, r):
    result = _run(small_config, ['homotopy'], family='dnr', n=n, r=r)['homotopy']
    assert result.status == ManifestStatus.PASS, result.errors


@pytest.mark.parametrize("request_args", [
    {'family': 'truncated', 'm': 3},
    {'family': 'nakayama', 'v': 2},
    {'family': 'dnr', 'n': 4, 'r': 1},
    {'family': 'dnr', 'n': 4, 'r': 2},
])
def test_twist_homotopy_on_the_zoo(small_config, request_args):
    result = _run(small_config, ['twist_homotopy'], **request_args)['twist_homotopy']
    assert result.status in OK, result.errors


def test_delta_eps1_on_r42(small_config):
    result = _run(small_config, ['delta_eps1'], family='dnr', n=4, r=2)['delta_eps1']
    assert result.status == ManifestStatus.PASS, result.errors


def test_delta_generators_over_f3(small_config):
    config = dict(small_config, verify=dict(small_config['verify'], max_degree=4))
    result = _run(config, ['delta_generators'], family='dnr', n=4, r=1, field='Fp:3')['delta_generators']
    assert result.status == ManifestStatus.PASS, result.errors


def test_theta_r42_degree_two():
    zoo = build_dnr(4, 2)
    engine = CohomologyEngine(zoo, {})
    for n in range(3):
        theta = engine.theta(zoo.nu, n)
        assert theta.bijective, n
        assert theta.source.dim == theta.fixed_dim


def test_char_robustness_r42(small_config):
    result = _run(small_config, ['char_robustness'], family='dnr', n=4, r=2)['char_robustness']
    assert result.status == ManifestStatus.PASS, result.errors


def test_bv_identity_dual_numbers_over_f3():
    zoo = truncated_poly(2, PrimeField(3))
    engine = CohomologyEngine(zoo, {})
    for n in range(5):
        for m in range(5 - n):
            xs, ys = engine.hh_up(zoo.nu, n), engine.hh_up(zoo.nu, m)
            for i in range(xs.dim):
                for j in range(ys.dim):
                    report = engine.check_bv_identity(xs.basis_class(i), ys.basis_class(j))
                    assert report['valid'], (n, m, report['errors'])


def test_verify_zoo_from_cli(capsys):
    argv = ['verify', '--family', 'zoo', '--suite', 'structure,twist_homotopy',
            '--max-degree', '2', '--format', 'json']
    assert main(argv) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report['status'] in ('PASS', 'PARTIAL')
