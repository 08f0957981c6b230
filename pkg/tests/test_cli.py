"""
Tests for the command-line front end and its exit codes.
"""
import json
import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent))

from app.cli import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED, main
from src.hochschild import calculus
from src.zoo import load_algebra

QUICK = ['--max-degree', '2', '--seed', '5']


def test_info_json(capsys):
    assert main(['info', '--family', 'nakayama', '--v', '2', '--format', 'json']) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report['dim'] == 4
    assert report['nu_order'] == 2
    assert report['symmetric'] is False


def test_info_defaults_to_dual_numbers(capsys):
    assert main(['info', '--format', 'json']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['dim'] == 2


def test_hh_table_json(capsys):
    assert main(['hh', '--family', 'truncated', '--m', '2', '--format', 'json'] + QUICK) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert [row['hh_dim'] for row in payload['table']] == [2, 1, 1]


def test_hh_table_marks_budget_overruns(capsys):
    argv = ['hh', '--family', 'truncated', '--m', '3', '--budget', '30', '--format', 'json'] + QUICK
    assert main(argv) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)['table']
    assert rows[0]['status'] == 'ok'
    assert rows[2]['status'] == 'skipped'
    assert rows[2]['hh_dim'] is None


def test_bv_text(capsys):
    assert main(['bv', '--family', 'truncated', '--m', '2', '--degree', '1']) == EXIT_OK
    assert "Delta on HH^1" in capsys.readouterr().out


def test_verify_passes(capsys):
    argv = ['verify', '--family', 'nakayama', '--suite', 'structure,twist_homotopy', '--format', 'json'] + QUICK
    assert main(argv) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report['status'] in ('PASS', 'PARTIAL')
    assert [s['name'] for s in report['suites']] == ['structure', 'twist_homotopy']


def test_verify_failure_exit_code(monkeypatch, capsys):
    original = calculus.coboundary
    monkeypatch.setattr(calculus, 'coboundary', lambda f: original(f).scale(-1))
    argv = ['verify', '--family', 'nakayama', '--suite', 'twist_homotopy'] + QUICK
    assert main(argv) == EXIT_VERIFICATION_FAILED
    assert "FAIL twist_homotopy" in capsys.readouterr().out


def test_verify_saves_report(tmp_path, capsys):
    argv = ['verify', '--suite', 'structure', '--save-dir', str(tmp_path)] + QUICK
    assert main(argv) == EXIT_OK
    saved = list(tmp_path.glob("verify_*.json"))
    assert len(saved) == 1
    assert json.loads(saved[0].read_text(encoding='utf-8'))['suites'][0]['name'] == 'structure'


@pytest.mark.parametrize("argv", [
    ['verify', '--input', 'does/not/exist.json'],
    ['info', '--field', 'Fp:4'],
    ['info', '--family', 'zoo'],
    ['verify', '--suite', 'nonsense'],
    ['hh', '--max-degree', '-1'],
    ['bv', '--degree', '-1'],
    ['info', '--family', 'dnr', '--n', '3'],
    ['info', '--family', 'truncated', '--input', 'algebra.json'],
])
def test_input_errors(argv, capsys):
    assert main(argv) == EXIT_INPUT_ERROR
    assert capsys.readouterr().err.startswith("error:")


def test_malformed_algebra_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"field": "Q", "dim": 1}', encoding='utf-8')
    assert main(['info', '--input', str(path)]) == EXIT_INPUT_ERROR
    assert "missing required key" in capsys.readouterr().err


def test_export_round_trip(tmp_path, capsys):
    target = tmp_path / "r41.json"
    assert main(['export', '--family', 'dnr', '--n', '4', '--r', '1', '--output', str(target)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == str(target)
    zoo = load_algebra(target)
    assert zoo.algebra.dim == 18
    assert main(['info', '--input', str(target), '--format', 'json']) == EXIT_OK
