"""
Tests for run manifests.
"""
import json
import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent))

from src.provenance import (
    ManifestStatus,
    RunConfig,
    SuiteResult,
    combine_status,
    compute_file_hash,
    create_manifest,
)


def _config(seed=7):
    return RunConfig(source={'family': 'truncated', 'm': 2, 'field': 'Q'}, field='Q',
                     max_degree=3, budget=1000, seed=seed, suites=['structure'])


@pytest.mark.parametrize("statuses,expected", [
    ([], ManifestStatus.SKIPPED),
    ([ManifestStatus.PASS, ManifestStatus.PASS], ManifestStatus.PASS),
    ([ManifestStatus.PASS, ManifestStatus.SKIPPED], ManifestStatus.PARTIAL),
    ([ManifestStatus.SKIPPED, ManifestStatus.SKIPPED], ManifestStatus.SKIPPED),
    ([ManifestStatus.PARTIAL, ManifestStatus.FAIL], ManifestStatus.FAIL),
])
def test_combine_status(statuses, expected):
    assert combine_status(statuses) == expected


def test_run_config_rejects_negative_degree():
    with pytest.raises(ValueError):
        RunConfig(source={}, field='Q', max_degree=-1, budget=10, seed=0)


def test_run_id_is_stable():
    first = create_manifest("k[x]/(x^2) over Q", _config())
    again = create_manifest("k[x]/(x^2) over Q", _config())
    other = create_manifest("k[x]/(x^2) over Q", _config(seed=8))
    assert first.run_id == again.run_id
    assert first.run_id != other.run_id
    assert first.to_json() == again.to_json()


def test_status_and_exit_code():
    manifest = create_manifest("demo", _config())
    manifest.add_suite(SuiteResult("structure", "axioms", ManifestStatus.PASS))
    assert manifest.exit_code == 0
    manifest.add_suite(SuiteResult("theta", "bijectivity", ManifestStatus.FAIL, errors=["rank 1 != 2"]))
    assert manifest.status == ManifestStatus.FAIL
    assert manifest.exit_code == 1
    data = json.loads(manifest.to_json())
    assert [s['status'] for s in data['suites']] == ["PASS", "FAIL"]
    assert data['config']['seed'] == 7


def test_save_and_input_hash(tmp_path):
    source = tmp_path / "algebra.json"
    source.write_text("{}", encoding='utf-8')
    manifest = create_manifest("file", _config(), input_path=str(source))
    assert manifest.input_sha256 == compute_file_hash(str(source))
    path = Path(manifest.save(str(tmp_path / "reports")))
    assert path.name == f"verify_{manifest.run_id}.json"
    assert json.loads(path.read_text(encoding='utf-8'))['input_sha256'] == manifest.input_sha256
