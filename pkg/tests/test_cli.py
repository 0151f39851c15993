"""Tests for the posopt command line."""

import json

import pytest
from click.testing import CliRunner

from src.posopt import __version__
from src.posopt.cli import cli
from src.posopt.errors import NumericalError


@pytest.fixture
def runner():
    """Create a click test runner."""
    return CliRunner()


def test_version(runner):
    result = runner.invoke(cli, ['--version'])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_sos_check_json(runner):
    """A positive quadratic prints a JSON envelope with verdict sos."""
    result = runner.invoke(cli, ['sos', 'check', '-f', 'x1^2 + 1'])
    assert result.exit_code == 0
    envelope = json.loads(result.stdout)
    assert envelope['command'] == 'sos check'
    assert envelope['verdict'] == 'sos'
    assert envelope['inputs']['f'] == 'x1^2 + 1'
    assert len(envelope['inputs_digest']) == 64


def test_text_format(runner):
    result = runner.invoke(cli, ['--format', 'text', 'sos', 'check', '-f', 'x1^2 + 1'])
    assert result.exit_code == 0
    assert 'verdict:  sos' in result.stdout


def test_bad_input_exits_with_usage_code(runner):
    """Parse errors map to exit status 2."""
    result = runner.invoke(cli, ['sos', 'check', '-f', 'x1^^2'])
    assert result.exit_code == 2
    assert 'Error:' in result.output


def test_numerical_failure_exit_code(runner, monkeypatch):
    """Solver breakdowns map to exit status 3."""
    def fail(spec, tol):
        raise NumericalError('stalled', 'stalled')

    monkeypatch.setattr('src.posopt.cli.dispatch', fail)
    result = runner.invoke(cli, ['sos', 'check', '-f', 'x1^2 + 1'])
    assert result.exit_code == 3


def test_verify_round_trip(runner, tmp_path):
    """A stored envelope re-checks as valid; a tampered one does not."""
    path = tmp_path / 'cert.json'
    result = runner.invoke(cli, ['--output', str(path), 'sos', 'check', '-f', 'x1^2 + x2^2 + 1'])
    assert result.exit_code == 0
    assert path.exists()

    checked = runner.invoke(cli, ['verify', str(path)])
    assert checked.exit_code == 0
    assert json.loads(checked.stdout)['verdict'] == 'valid'

    envelope = json.loads(path.read_text())
    envelope['inputs']['f'] = 'x1^2 + x2^2 + 2'
    path.write_text(json.dumps(envelope))
    tampered = runner.invoke(cli, ['verify', str(path)])
    assert tampered.exit_code == 0
    assert json.loads(tampered.stdout)['verdict'] == 'invalid'


def test_moments_inline_json(runner):
    result = runner.invoke(cli, ['moments', 'hamburger', '--moments', '[1, 0, 1, 0, 3]'])
    assert result.exit_code == 0
    assert json.loads(result.stdout)['verdict'] == 'feasible'


def test_batch_mode(runner, tmp_path):
    """Every record gets a line; failures become error records."""
    batch = tmp_path / 'batch.jsonl'
    batch.write_text(
        json.dumps({'command': 'sos check', 'options': {'f': 'x1^2 + 1'}}) + '\n'
        + '\n'
        + json.dumps({'command': 'no such thing'}) + '\n'
    )
    result = runner.invoke(cli, ['--batch', str(batch)])
    assert result.exit_code == 0
    lines = [json.loads(line) for line in result.stdout.splitlines() if line.strip()]
    assert len(lines) == 2
    assert lines[0]['verdict'] == 'sos'
    assert lines[1]['type'] == 'InputError'


def test_config_file_rejects_unknown_keys(runner, tmp_path):
    config = tmp_path / 'posopt.env'
    config.write_text('FEAS_TOL=1e-9\nNOT_A_KEY=1\n')
    result = runner.invoke(cli, ['--config', str(config), 'sos', 'check', '-f', 'x1^2 + 1'])
    assert result.exit_code == 2


def test_seed_is_recorded_in_inputs(runner):
    result = runner.invoke(cli, ['--seed', '7', 'sos', 'check', '-f', 'x1^2 + 1'])
    assert json.loads(result.stdout)['inputs']['seed'] == 7


def test_serve_runs_the_service(runner, monkeypatch):
    """``serve`` builds the app and hands host and port to Flask."""
    calls = []

    def fake_run(self, **kwargs):
        calls.append((self.name, kwargs))

    monkeypatch.setattr('flask.Flask.run', fake_run)
    result = runner.invoke(cli, ['serve', '--port', '5050'])
    assert result.exit_code == 0
    assert len(calls) == 1
    assert calls[0][1]['port'] == 5050
    assert calls[0][1]['host'] == '127.0.0.1'
    assert calls[0][1]['use_reloader'] is False
