"""
Test dell'API FastAPI.

Uso:
    pytest test_api.py
"""
import pytest
from fastapi.testclient import TestClient

from api import app
from visco.figure1 import COLUMNS


@pytest.fixture
def client():
    with TestClient(app) as c:
        yield c


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["docs"] == "/docs"


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "healthy"
    assert data["config_valid"] is True


def test_eval_mittag_leffler(client):
    response = client.post("/api/eval", json={"fn": "mittag-leffler", "alpha": 0.5, "z": -1.0})
    assert response.status_code == 200
    data = response.json()
    assert data["columns"] == ["value"]
    assert data["rows"][0]["value"] == pytest.approx(0.427583576155807, rel=1e-13)


def test_eval_prabhakar_kernel(client):
    response = client.post(
        "/api/eval", json={"fn": "prabhakar-kernel", "alpha": 1.0, "beta": 1.0, "gamma": 1.0, "omega": -1.0, "t": 1.0}
    )
    assert response.status_code == 200
    # e_{1,1}^1(t; -1) = exp(-t)
    assert response.json()["rows"][0]["value"] == pytest.approx(0.36787944117144233, rel=1e-13)


def test_eval_domain_error(client):
    response = client.post("/api/eval", json={"fn": "gamma", "x": 0.0})
    assert response.status_code == 400
    assert response.json()["detail"].startswith("DomainError")


def test_eval_unknown_function(client):
    response = client.post("/api/eval", json={"fn": "zeta"})
    assert response.status_code == 400
    assert response.json()["detail"].startswith("ParseError")


def test_eval_convergence_error(client):
    response = client.post("/api/eval", json={"fn": "series-truncation", "alpha": 0.1, "z": 1000.0})
    assert response.status_code == 422
    assert response.json()["detail"].startswith("ConvergenceError")


def test_eval_validation(client):
    response = client.post("/api/eval", json={"fn": "gamma", "alpha": -1.0})
    assert response.status_code == 422


def test_figure1(client):
    response = client.post("/api/figure1", json={"points": 5})
    assert response.status_code == 200
    data = response.json()
    assert data["columns"] == COLUMNS
    assert len(data["rows"]) == 5


def test_figure1_too_many_points(client):
    assert client.post("/api/figure1", json={"points": 6000}).status_code == 422


def test_crosscheck_pass(client):
    response = client.post("/api/crosscheck", json={"theorem": 2, "alpha": 0.5})
    assert response.status_code == 200
    data = response.json()
    assert data["verdict"] == "PASS"
    assert data["discrepancy"] <= data["tolerance"]
    assert "t2@0.5" in data["details"]


def test_crosscheck_unknown_theorem(client):
    assert client.post("/api/crosscheck", json={"theorem": 9}).status_code == 422
