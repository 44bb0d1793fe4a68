"""HTTP service: endpoint behavior, status codes, CLI parity."""

import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from ptgraph import fixtures
from ptgraph.cli import main
from ptgraph.service import app


@pytest.fixture()
def client():
    return TestClient(app)


def test_health(client):
    r = client.get("/v1/health")
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "ok"
    assert body["version"]


def test_analyze(client):
    r = client.post("/v1/analyze", json={"graph_text": fixtures.load("fig2")})
    assert r.status_code == 200
    body = r.json()
    assert body["overall"] == "Rejected"
    assert body["schema"] == "ptgraph/v1"


def test_analyze_options_forwarded(client):
    r = client.post(
        "/v1/analyze",
        json={
            "graph_text": fixtures.load("fig4"),
            "completion_cap": 1,
        },
    )
    # cap below the number of dashes is the caller's 422
    assert r.status_code == 422 or r.json()["completions_analyzed"] == 3
    r2 = client.post(
        "/v1/analyze",
        json={"graph_text": fixtures.load("fig4"), "completion_cap": 5},
    )
    assert r2.status_code == 200
    assert r2.json()["completions_analyzed"] == 3


def test_minsets(client):
    r = client.post(
        "/v1/minsets",
        json={"graph_text": fixtures.load("fig2"), "outcome": "Y0"},
    )
    assert r.status_code == 200
    assert r.json()["per_completion"][0]["sets"] == [["U1", "U3"]]


def test_simulate(client):
    r = client.post(
        "/v1/simulate",
        json={"graph_text": fixtures.load("fig2"), "seeds": 3},
    )
    assert r.status_code == 200
    body = r.json()
    assert len(body["records"]) == 3
    assert all("gap" in rec for rec in body["records"])


def test_parse_error_is_400(client):
    r = client.post("/v1/analyze", json={"graph_text": "pdag { A -> }"})
    assert r.status_code == 400
    assert r.json()["error"]["type"] == "ParseError"


def test_validation_error_is_400(client):
    r = client.post(
        "/v1/analyze", json={"graph_text": "pdag { A [exposure] A -> Y0 A -> Y1 }"}
    )
    assert r.status_code == 400
    body = r.json()
    assert body["error"]["type"] == "ValidationError"
    assert body["error"]["violations"]


def test_cap_exceeded_is_422(client):
    body = " ".join(f"V{i} -- W{i}" for i in range(13))
    r = client.post(
        "/v1/analyze",
        json={"graph_text": f"pdag {{ A [exposure] A -> Y1 U1 -> Y0 U1 -> Y1 {body} }}"},
    )
    assert r.status_code == 422
    assert r.json()["error"]["type"] == "TooManyUndirectedEdges"


def test_cors_header_present(client):
    r = client.post(
        "/v1/analyze",
        json={"graph_text": fixtures.load("fig4")},
        headers={"Origin": "http://localhost:5173"},
    )
    assert r.headers.get("access-control-allow-origin") == "*"


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_service_bytes_match_cli(client, tmp_path, name):
    """The service body and the CLI stdout are the same bytes."""
    path = tmp_path / f"{name}.dag"
    path.write_text(fixtures.load(name), encoding="utf-8")
    cli_out = CliRunner().invoke(main, ["analyze", str(path)]).output
    http_out = client.post(
        "/v1/analyze", json={"graph_text": fixtures.load(name)}
    ).text
    assert cli_out == http_out
    # sanity: both are the same parsed document too
    assert json.loads(cli_out) == json.loads(http_out)
