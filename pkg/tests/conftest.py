import pytest
from click.testing import CliRunner

from simpson_nd import create_app
from simpson_nd.extensions import Settings
from simpson_nd.models.region import regular_hexagon, trapezoid


@pytest.fixture
def trapezoid_region():
    return trapezoid()


@pytest.fixture
def hexagon():
    return regular_hexagon()


@pytest.fixture
def app():
    app = create_app(Settings())
    app.config["TESTING"] = True
    return app


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def runner(monkeypatch):
    monkeypatch.delenv("SIMPSON_ND_FORMAT", raising=False)
    return CliRunner()
