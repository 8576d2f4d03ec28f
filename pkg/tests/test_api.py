import json

import pytest
from fastapi.testclient import TestClient

from mira import __version__, parse_json, serialize_json, stable_dumps
from mira.api import create_app
from conftest import FIXTURES


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


def fixture_bytes(name: str) -> bytes:
    return (FIXTURES / "valid" / name).read_bytes()


def upload(client, name="two_layer.json"):
    response = client.post("/api/network", content=fixture_bytes(name))
    assert response.status_code == 200, response.text
    return response


# -- health & lifecycle -----------------------------------------------------------

def test_health(client):
    body = client.get("/api/health").json()
    assert body == {"status": "ok", "version": __version__}


def test_endpoints_404_before_upload(client):
    for path in ("/api/network", "/api/metrics", "/api/meta", "/api/layout/stack",
                 "/api/layout/layers", "/api/session", "/api/export"):
        response = client.get(path)
        assert response.status_code == 404, path
        assert response.json()["error"]["code"] == "no-network"
    response = client.get("/api/compare", params={"a": "x", "b": "y"})
    assert response.status_code == 404


def test_landing_json_without_static_assets(client):
    body = client.get("/").json()
    assert body["api"] == "/api"


# -- network upload ----------------------------------------------------------------

def test_upload_valid_json(client):
    response = upload(client)
    body = response.json()
    assert body["valid"] is True
    assert body["normalized_flags"]["directed"] is False


def test_upload_invalid_json_reports_422(client):
    bad = (FIXTURES / "invalid" / "duplicate_edge_exact.json").read_bytes()
    response = client.post("/api/network", content=bad)
    assert response.status_code == 422
    body = response.json()
    assert body["valid"] is False
    assert body["errors"][0]["code"] == "duplicate-edge"


def test_upload_csv(client):
    csv = "layer_from,node_from,layer_to,node_to,weight\nl1,a,l1,b,2.0\n"
    response = client.post("/api/network", content=csv, headers={"content-type": "text/csv"})
    assert response.status_code == 200
    network = client.get("/api/network").json()
    assert [l["layer_id"] for l in network["layers"]] == ["l1"]


def test_get_network_returns_canonical_bytes(client):
    upload(client)
    snapshot, _ = parse_json(fixture_bytes("two_layer.json"))
    assert client.get("/api/network").content == serialize_json(snapshot)


def test_upload_replaces_network_atomically(client):
    upload(client, "two_layer.json")
    assert len(client.get("/api/metrics").json()["layers"]) == 2
    upload(client, "minimal.json")
    metrics = client.get("/api/metrics").json()
    assert len(metrics["layers"]) == 1
    assert metrics["layers"][0]["layer_id"] == "solo"


# -- metrics -------------------------------------------------------------------------

def test_metrics_stable_and_cached(client):
    upload(client)
    first = client.get("/api/metrics").content
    second = client.get("/api/metrics").content
    assert first == second
    assert json.loads(first)["layer_count"] == 2


def test_metrics_bins_parameter(client):
    upload(client)
    five = client.get("/api/metrics", params={"bins": 5}).json()
    assert len(five["distributions"]["k_intra"]["counts"]) <= 5
    response = client.get("/api/metrics", params={"bins": 0})
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "invalid-parameter"


# -- meta ----------------------------------------------------------------------------

def test_meta_modes(client):
    upload(client)
    union = client.get("/api/meta", params={"mode": "union"}).json()
    count = client.get("/api/meta", params={"mode": "count"}).json()
    weights = client.get("/api/meta", params={"mode": "sum"}).json()
    assert union["mode"] == "union"
    assert count["mode"] == "sum_occurrence"
    assert weights["mode"] == "sum_weights"
    assert all(e["weight"] == 1.0 for e in union["edges"])


def test_meta_rejects_unknown_mode(client):
    upload(client)
    response = client.get("/api/meta", params={"mode": "max"})
    assert response.status_code == 422


# -- layouts --------------------------------------------------------------------------

def test_layout_stack_deterministic_per_seed(client):
    upload(client)
    a = client.get("/api/layout/stack", params={"seed": 3}).content
    b = client.get("/api/layout/stack", params={"seed": 3}).content
    c = client.get("/api/layout/stack", params={"seed": 4}).content
    assert a == b
    assert a != c
    body = json.loads(a)
    assert set(body) == {"union", "projection"}
    assert body["projection"]["params"]["shear_x"] == 0.35


def test_layout_stack_custom_params(client):
    upload(client)
    body = client.get(
        "/api/layout/stack",
        params={"shear_x": 0.2, "shear_y": -0.3, "scale": 2.0},
    ).json()
    assert body["projection"]["params"]["shear_x"] == 0.2
    assert body["projection"]["params"]["scale"] == 2.0


def test_layout_layers_force(client):
    upload(client)
    body = client.get("/api/layout/layers", params={"mode": "force", "seed": 1}).json()
    assert body["mode"] == "force"
    assert set(body["positions"]) == {"alpha", "beta"}


def test_layout_layers_geo_requires_coordinates(client):
    upload(client)  # two_layer has no coordinates
    response = client.get("/api/layout/layers", params={"mode": "geo"})
    assert response.status_code == 422
    error = response.json()["error"]
    assert error["code"] == "missing-coordinates"
    assert set(error["layers"]) == {"alpha", "beta"}

    upload(client, "geo.json")
    body = client.get("/api/layout/layers", params={"mode": "geo"}).json()
    assert body["mode"] == "geographic"


def test_layout_layers_rejects_unknown_mode(client):
    upload(client)
    assert client.get("/api/layout/layers", params={"mode": "orbit"}).status_code == 422


# -- compare ---------------------------------------------------------------------------

def test_compare(client):
    upload(client)
    body = client.get("/api/compare", params={"a": "alpha", "b": "beta"}).json()
    assert body["j_node"] == 1.0
    response = client.get("/api/compare", params={"a": "alpha", "b": "ghost"})
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "unknown-layer"


# -- view & session ----------------------------------------------------------------------

def test_view_filters_threshold(client):
    upload(client, "threshold.json")
    payload = {"filters": {"min_weight_intra": 0.55}}
    body = client.post("/api/view", json=payload).json()
    weights = sorted(e["weight"] for e in body["intralayer_edges"])
    assert weights == [0.55, 0.9]
    assert body["counts"]["intralayer_edges"] == 2


def test_view_selection_dims(client):
    upload(client, "threshold.json")
    payload = {"selection": {"node_id": "a"}}
    body = client.post("/api/view", json=payload).json()
    dimmed = [r for r in body["state_nodes"] if r["dimmed"]]
    assert dimmed  # something outside the highlight got dimmed


def test_view_rejects_bad_mode(client):
    upload(client)
    response = client.post("/api/view", json={"active_mode": "spreadsheet"})
    assert response.status_code == 422


def test_session_round_trip_over_http(client):
    upload(client, "threshold.json")
    client.post("/api/view", json={
        "active_mode": "meta",
        "filters": {"min_weight_intra": 0.55, "show_interlayer": True},
        "meta_mode": "sum",
    })
    saved = client.get("/api/session").content

    with TestClient(create_app()) as other:
        response = other.post("/api/session", content=saved)
        assert response.status_code == 200
        body = response.json()
        assert body["restored"] is True
        assert body["view_state"]["active_mode"] == "meta"
        weights = sorted(e["weight"] for e in body["view"]["intralayer_edges"])
        assert weights == [0.55, 0.9]
        assert other.get("/api/session").content == saved


def test_session_version_mismatch_over_http(client):
    upload(client)
    doc = json.loads(client.get("/api/session").content)
    doc["format_version"] = 99
    response = client.post("/api/session", content=json.dumps(doc))
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "version-mismatch"


def test_session_corrupt_over_http(client):
    response = client.post("/api/session", content=b"garbage")
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "corrupt-payload"


def test_export_payload(client):
    upload(client, "threshold.json")
    client.post("/api/view", json={"filters": {"min_weight_intra": 0.9}})
    body = client.get("/api/export").json()
    assert set(body) == {"view_state", "view", "union", "projection"}
    assert body["view_state"]["filters"]["min_weight_intra"] == 0.9
    assert len(body["view"]["intralayer_edges"]) == 1
    assert body["projection"]["positions"]


def test_static_root_mounts_assets(tmp_path):
    (tmp_path / "index.html").write_text("<html><body>ui</body></html>")
    with TestClient(create_app(static_root=tmp_path)) as client:
        response = client.get("/")
        assert response.status_code == 200
        assert "ui" in response.text
        assert client.get("/api/health").status_code == 200
