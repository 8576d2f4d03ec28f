import json
import shutil

import pytest
from fastapi.testclient import TestClient

from mira.api import create_app
from mira.cli import main
from conftest import FIXTURES


@pytest.fixture()
def workdir(tmp_path):
    for name in ("two_layer.json", "minimal.json", "threshold.json", "geo.json"):
        shutil.copy(FIXTURES / "valid" / name, tmp_path / name)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- validate ---------------------------------------------------------------------

def test_validate_ok(workdir, capsys):
    code, out, err = run(capsys, "validate", workdir / "two_layer.json")
    assert code == 0
    report = json.loads(out)
    assert report["valid"] is True
    assert report["errors"] == []


def test_validate_bad_document(tmp_path, capsys):
    bad = FIXTURES / "invalid" / "duplicate_node.json"
    code, out, err = run(capsys, "validate", bad)
    assert code == 1
    report = json.loads(out)
    assert report["valid"] is False
    assert report["errors"][0]["code"] == "duplicate-id"


def test_missing_file_exits_2(tmp_path, capsys):
    code, out, err = run(capsys, "validate", tmp_path / "nope.json")
    assert code == 2


def test_validate_csv(tmp_path, capsys):
    edges = tmp_path / "edges.csv"
    edges.write_text("layer_from,node_from,layer_to,node_to\nl1,a,l1,b\n")
    code, out, _ = run(capsys, "validate", edges)
    assert code == 0
    assert json.loads(out)["valid"] is True


# -- stats ------------------------------------------------------------------------

def test_stats_json_matches_api_bytes(workdir, capsys):
    code, out, _ = run(capsys, "stats", workdir / "two_layer.json", "--format", "json")
    assert code == 0
    with TestClient(create_app()) as client:
        client.post("/api/network", content=(workdir / "two_layer.json").read_bytes())
        api_bytes = client.get("/api/metrics").content
    assert out.encode() == api_bytes


def test_stats_respects_bins(workdir, capsys):
    code, out, _ = run(capsys, "stats", workdir / "two_layer.json", "--bins", "5")
    assert code == 0
    body = json.loads(out)
    assert len(body["distributions"]["multiplexity"]["counts"]) <= 5


def test_stats_csv_format(workdir, capsys):
    code, out, _ = run(capsys, "stats", workdir / "two_layer.json", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split(",")[:2] == ["layer_id", "node_id"]
    assert len(lines) == 1 + 6  # header + one row per state node


def test_stats_csv_and_json_agree(workdir, capsys):
    code, json_out, _ = run(capsys, "stats", workdir / "threshold.json", "--format", "json")
    assert code == 0
    code, csv_out, _ = run(capsys, "stats", workdir / "threshold.json", "--format", "csv")
    assert code == 0
    import csv as csvmod
    import io

    rows = list(csvmod.DictReader(io.StringIO(csv_out)))
    by_key = {(r["layer_id"], r["node_id"]): r for r in rows}
    for row in json.loads(json_out)["state_nodes"]:
        csv_row = by_key[(row["layer_id"], row["node_id"])]
        assert float(csv_row["s_intra"]) == row["s_intra"]
        assert int(csv_row["k_intra"]) == row["k_intra"]


# -- meta -------------------------------------------------------------------------

def test_meta_modes(workdir, capsys):
    code, out, _ = run(capsys, "meta", workdir / "two_layer.json", "--mode", "sum")
    assert code == 0
    body = json.loads(out)
    assert body["mode"] == "sum_weights"

    code, out, _ = run(capsys, "meta", workdir / "two_layer.json")
    assert json.loads(out)["mode"] == "union"


def test_meta_rejects_bad_mode(workdir, capsys):
    with pytest.raises(SystemExit):
        main(["meta", str(workdir / "two_layer.json"), "--mode", "max"])


# -- layout -----------------------------------------------------------------------

def test_layout_payload(workdir, capsys):
    code, out, _ = run(capsys, "layout", workdir / "two_layer.json", "--seed", "9")
    assert code == 0
    body = json.loads(out)
    assert set(body) == {"union", "stack", "layer_graph", "geographic", "grid"}
    assert body["geographic"] is None  # no coordinates in this network
    assert len(body["grid"]) == 2


def test_layout_deterministic(workdir, capsys):
    _, first, _ = run(capsys, "layout", workdir / "two_layer.json", "--seed", "9")
    _, second, _ = run(capsys, "layout", workdir / "two_layer.json", "--seed", "9")
    assert first == second
    _, third, _ = run(capsys, "layout", workdir / "two_layer.json", "--seed", "10")
    assert first != third


def test_layout_geographic_when_coordinates_present(workdir, capsys):
    code, out, _ = run(capsys, "layout", workdir / "geo.json")
    body = json.loads(out)
    assert body["geographic"]["mode"] == "geographic"


# -- convert ----------------------------------------------------------------------

def test_convert_json_to_directory_and_back(workdir, capsys, tmp_path):
    out_dir = tmp_path / "tables"
    code, _, _ = run(capsys, "convert", workdir / "two_layer.json", out_dir)
    assert code == 0
    assert {p.name for p in out_dir.iterdir()} == {
        "layers.csv", "nodes.csv", "state_nodes.csv", "edges.csv"}

    back = tmp_path / "back.json"
    code, _, _ = run(capsys, "convert", out_dir, back)
    assert code == 0

    code, a, _ = run(capsys, "stats", workdir / "two_layer.json")
    code, b, _ = run(capsys, "stats", back)
    assert a == b  # metric-identical across the format round trip


def test_convert_json_to_edge_csv(workdir, capsys, tmp_path):
    out_csv = tmp_path / "edges.csv"
    code, _, _ = run(capsys, "convert", workdir / "threshold.json", out_csv)
    assert code == 0
    header = out_csv.read_text().splitlines()[0]
    assert header.split(",")[:4] == ["layer_from", "node_from", "layer_to", "node_to"]

    code, a, _ = run(capsys, "stats", workdir / "threshold.json")
    code, b, _ = run(capsys, "stats", out_csv)
    assert a == b


def test_convert_csv_to_json(workdir, capsys, tmp_path):
    edges = tmp_path / "in.csv"
    edges.write_text("layer_from,node_from,layer_to,node_to,weight\nl1,a,l1,b,2.5\n")
    out = tmp_path / "out.json"
    code, _, _ = run(capsys, "convert", edges, out)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["extended"][0]["weight"] == 2.5


def test_convert_preserves_directedness(capsys, tmp_path):
    src = FIXTURES / "valid" / "directed.json"
    out_csv = tmp_path / "d.csv"
    code, _, _ = run(capsys, "convert", src, out_csv)
    assert code == 0
    back = tmp_path / "d.json"
    code, _, _ = run(capsys, "convert", out_csv, back)
    assert code == 0
    doc = json.loads(back.read_text())
    assert doc["directed"] is True
    assert doc["directed_interlayer"] is True


def test_convert_rejects_invalid_input(capsys, tmp_path):
    bad = FIXTURES / "invalid" / "duplicate_node.json"
    code, out, err = run(capsys, "convert", bad, tmp_path / "out.csv")
    assert code == 1


# -- serve ------------------------------------------------------------------------

def test_serve_port_resolution(monkeypatch):
    import uvicorn

    captured = {}

    def fake_run(app, **kwargs):
        captured.update(kwargs)

    monkeypatch.setattr(uvicorn, "run", fake_run)
    monkeypatch.setenv("MIRA_PORT", "9001")
    assert main(["serve"]) == 0
    assert captured["port"] == 9001

    assert main(["serve", "--port", "7070"]) == 0
    assert captured["port"] == 7070

    monkeypatch.delenv("MIRA_PORT")
    assert main(["serve"]) == 0
    assert captured["port"] == 8787
