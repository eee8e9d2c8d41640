import pytest
from fastapi.testclient import TestClient

from backend.main import app

CABLE = {"companion": "trefoil", "braid": "index 2; s+ 1"}


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_root_lists_the_knots_api(client):
    data = client.get("/").json()
    assert data["name"] == "Satellite Width API"
    assert "/api/knots" in data["endpoints"]


def test_catalog_endpoint(client):
    resp = client.get("/api/knots/catalog")
    assert resp.status_code == 200
    assert [k["name"] for k in resp.json()["knots"]] == ["trefoil", "figure_eight", "unknot"]


def test_invariants_endpoint(client):
    resp = client.post("/api/knots/invariants", json={"knot": "trefoil"})
    assert resp.status_code == 200
    assert resp.json()["width"] == 8

    resp = client.post("/api/knots/invariants", json={"morse": "cup 0\ncap 0\n"})
    assert resp.json()["level_counts"] == [2]


@pytest.mark.parametrize("body, status", [
    ({}, 400),
    ({"morse": "cup x"}, 400),
    ({"morse": "cup 0\ncup 2\ncap 0\ncap 0\n"}, 400),
    ({"knot": "nope"}, 422),
])
def test_invariants_errors(client, body, status):
    assert client.post("/api/knots/invariants", json=body).status_code == status


def test_satellite_endpoint(client):
    resp = client.post("/api/knots/satellite", json=CABLE)
    assert resp.status_code == 200
    data = resp.json()
    assert (data["report"]["width"], data["report"]["bridge"], data["report"]["trunk"]) == (32, 4, 8)
    assert data["morse"].startswith("cup 0\ncup 1\nx+ 0\n")

    resp = client.post("/api/knots/satellite", json={**CABLE, "braid": "index 2"})
    assert resp.status_code == 422


def test_sweep_endpoint(client):
    data = client.post("/api/knots/sweep", json=CABLE).json()
    assert len(data["levels"]) == 17
    assert data["witness_trunk"] == 4


def test_global_stats(client):
    assert client.get("/api/stats").json()["knots"] == {"knots": 3, "two_bridge": 2}


def test_registry_info(client):
    data = client.get("/api/registry").json()
    names = {m["name"] for m in data["modules"]}
    assert {"knot_catalog", "width_search", "knots_router"} <= names
    assert "compute_invariants" in data["capabilities_description"]


def test_registry_reports_config_keys_and_expensive_capabilities(client):
    modules = {m["name"]: m for m in client.get("/api/registry").json()["modules"]}
    search = modules["width_search"]
    assert "search.seed" in search["config_keys"]
    assert search["expensive"] == ["minimize_width"]
    assert modules["knot_catalog"]["config_keys"] == ["catalog.dir"]
