"""Basic tests for the posopt JSON service."""

import pytest

from src.posopt.app import create_app
from src.posopt.config.settings import TestingConfig
from src.posopt.errors import NumericalError


@pytest.fixture
def app():
    """Create application for testing."""
    app = create_app(TestingConfig)
    yield app


@pytest.fixture
def client(app):
    """Create test client."""
    return app.test_client()


@pytest.fixture
def runner(app):
    """Create test runner."""
    return app.test_cli_runner()


def test_health_endpoint(client):
    """Test health check endpoint."""
    response = client.get('/health')
    assert response.status_code == 200

    data = response.get_json()
    assert data['status'] == 'ok'
    assert data['service'] == 'posopt'


def test_command_listing(client):
    """Every registered subcommand is listed with its options."""
    response = client.get('/api/commands')
    assert response.status_code == 200

    paths = [entry['command'] for entry in response.get_json()]
    assert 'sos check' in paths
    assert 'sys dgkf' in paths
    assert paths == sorted(paths)


def test_run_command(client):
    """Slashes in the URL stand for spaces in the command path."""
    response = client.post('/api/run/sos/check', json={'f': 'x1^2 + 1'})
    assert response.status_code == 200

    data = response.get_json()
    assert data['command'] == 'sos check'
    assert data['verdict'] == 'sos'
    assert data['inputs'] == {'f': 'x1^2 + 1'}


def test_run_rejects_non_object_body(client):
    response = client.post('/api/run/sos/check', json=['x1^2'])
    assert response.status_code == 400
    assert response.get_json()['type'] == 'InputError'


def test_run_reports_input_errors(client):
    """Missing options and unknown commands are client errors."""
    response = client.post('/api/run/sos/check', json={})
    assert response.status_code == 400

    response = client.post('/api/run/no/such/command', json={})
    assert response.status_code == 400
    assert 'Unknown command' in response.get_json()['error']


def test_run_reports_numerical_errors(client, monkeypatch):
    """Solver breakdowns are reported as 422."""
    def fail(spec, tol):
        raise NumericalError('stalled', 'stalled')

    monkeypatch.setattr('src.posopt.views.api.dispatch', fail)
    response = client.post('/api/run/sos/check', json={'f': 'x1^2 + 1'})
    assert response.status_code == 422
    assert response.get_json()['type'] == 'NumericalError'


def test_batch_endpoint(client):
    """Results keep input order; a failing record does not abort the batch."""
    records = [
        {'command': 'moments hamburger', 'options': {'moments': [1, 0, -1]}},
        {'command': 'sos check', 'options': {'f': 'x1^3'}},
        {'command': 'sos check', 'options': {}},
    ]
    response = client.post('/api/batch', json=records)
    assert response.status_code == 200

    data = response.get_json()
    assert [r['command'] for r in data] == ['moments hamburger', 'sos check', 'sos check']
    assert data[0]['verdict'] == 'infeasible'
    assert data[1]['verdict'] == 'not_sos'
    assert data[2]['type'] == 'InputError'


def test_batch_rejects_bad_records(client):
    assert client.post('/api/batch', json={'command': 'sos check'}).status_code == 400
    assert client.post('/api/batch', json=[{'options': {}}]).status_code == 400


def test_tolerances_come_from_config(app):
    """The service reads tolerances from the Flask config."""
    from src.posopt.sdp import Tolerances

    tol = Tolerances.from_config(app.config)
    assert tol.seed == TestingConfig.POSOPT_SEED
    assert tol.lmi_margin == TestingConfig.POSOPT_LMI_MARGIN
