import json

import pytest

from mira import (
    AttributeFilter,
    Filters,
    SessionCorruptError,
    SessionVersionError,
    UnknownLayerError,
    apply_filters,
    compare_layers,
    load_session,
    parse_json,
    save_session,
    select_node,
)
from mira.session import FORMAT_VERSION, MODES, default_session, with_filters
from conftest import load_fixture


def make(doc):
    snapshot, report = parse_json(json.dumps(doc))
    assert snapshot is not None, [i.to_json_dict() for i in report.errors]
    return snapshot


def intra_weights(view):
    return sorted(e.weight for e in view.intra_edges)


# -- filtering ---------------------------------------------------------------------

def test_default_view_shows_intra_hides_inter():
    snap = load_fixture("threshold.json")
    view = apply_filters(snap, default_session(snap))
    assert len(view.state_nodes) == 6
    assert len(view.intra_edges) == 3
    assert view.inter_edges == ()  # cross-layer links hidden by default
    assert not view.dimmed_state_nodes


def test_threshold_is_inclusive():
    snap = load_fixture("threshold.json")
    state = with_filters(default_session(snap), min_weight_intra=0.55)
    view = apply_filters(snap, state)
    assert intra_weights(view) == [0.55, 0.9]

    state = with_filters(default_session(snap), min_weight_intra=0.56)
    assert intra_weights(apply_filters(snap, state)) == [0.9]


def test_interlayer_threshold():
    snap = load_fixture("threshold.json")
    state = with_filters(default_session(snap), show_interlayer=True, min_weight_inter=0.55)
    view = apply_filters(snap, state)
    assert sorted(e.weight for e in view.inter_edges) == [0.55, 0.9]


def test_visible_layers_hides_foreign_elements():
    snap = load_fixture("threshold.json")
    state = with_filters(
        default_session(snap), visible_layers=("top",), show_interlayer=True)
    view = apply_filters(snap, state)
    assert all(lid == "top" for lid, _ in view.state_nodes)
    assert len(view.intra_edges) == 3
    # interlayer edges need both endpoints visible; bottom is hidden
    assert view.inter_edges == ()


def test_node_query_is_case_insensitive_substring():
    snap = load_fixture("two_layer.json")
    state = with_filters(default_session(snap), node_query="A")
    view = apply_filters(snap, state)
    assert {nid for _, nid in view.state_nodes} == {"a"}
    # an edge is shown only when both endpoints survive the query
    assert view.intra_edges == ()


def test_attribute_filters():
    snap = load_fixture("attrs.json")
    numeric = AttributeFilter(target="state", key="abundance", op="ge", value=10)
    state = with_filters(default_session(snap), attribute_filters=(numeric,))
    view = apply_filters(snap, state)
    assert [nid for _, nid in view.state_nodes] == ["a"]

    text = AttributeFilter(target="node", key="species", op="contains", value="Api")
    state = with_filters(default_session(snap), attribute_filters=(text,))
    view = apply_filters(snap, state)
    assert [nid for _, nid in view.state_nodes] == ["b"]


def test_attribute_filter_missing_key_excludes():
    snap = load_fixture("attrs.json")
    f = AttributeFilter(target="node", key="mass", op="lt", value=1.0)
    view = apply_filters(snap, with_filters(default_session(snap), attribute_filters=(f,)))
    # only node a carries mass; b has no value and is filtered out
    assert [nid for _, nid in view.state_nodes] == ["a"]


def test_edge_requires_visible_endpoints():
    snap = load_fixture("two_layer.json")
    state = with_filters(default_session(snap), node_query="b", show_interlayer=True)
    view = apply_filters(snap, state)
    visible = set(view.state_nodes)
    for e in view.intra_edges:
        assert (e.layer_from, e.node_from) in visible
        assert (e.layer_to, e.node_to) in visible
    for e in view.inter_edges:
        assert e.source in visible and e.target in visible


def test_filter_monotonicity():
    snap = load_fixture("threshold.json")
    last = None
    for threshold in (0.0, 0.3, 0.55, 0.9, 1.5):
        state = with_filters(
            default_session(snap), min_weight_intra=threshold,
            min_weight_inter=threshold, show_interlayer=True)
        view = apply_filters(snap, state)
        count = len(view.intra_edges) + len(view.inter_edges)
        if last is not None:
            assert count <= last
        last = count


# -- selection ----------------------------------------------------------------------

def test_node_selection_dims_everything_else():
    snap = load_fixture("threshold.json")
    state = default_session(snap)
    state = with_filters(state, show_interlayer=True)
    state.selection = {"node_id": "a"}
    view = apply_filters(snap, state)
    d = view.to_json_dict()
    dimmed_nodes = {(r["layer_id"], r["node_id"]) for r in d["state_nodes"] if r["dimmed"]}
    lit_nodes = {(r["layer_id"], r["node_id"]) for r in d["state_nodes"] if not r["dimmed"]}
    # a's replicas, plus neighbors through visible incident edges, stay lit
    assert ("top", "a") in lit_nodes and ("bottom", "a") in lit_nodes
    assert ("bottom", "b") in dimmed_nodes
    lit_intra = [r for r in d["intralayer_edges"] if not r["dimmed"]]
    assert all("a" in (r["node_from"], r["node_to"]) for r in lit_intra)


def test_invalid_selection_means_no_dimming():
    snap = load_fixture("threshold.json")
    state = default_session(snap)
    state.selection = {"node_id": "ghost"}
    view = apply_filters(snap, state)
    assert not view.dimmed_state_nodes
    assert not view.dimmed_intra


def test_intralayer_edge_selection_tracks_all_layers():
    doc = {
        "layers": [{"layer_id": "l1"}, {"layer_id": "l2"}],
        "nodes": [{"node_id": n} for n in "abc"],
        "extended": [
            {"layer_from": "l1", "node_from": "a", "layer_to": "l1", "node_to": "b"},
            {"layer_from": "l2", "node_from": "b", "layer_to": "l2", "node_to": "a"},
            {"layer_from": "l2", "node_from": "b", "layer_to": "l2", "node_to": "c"},
        ],
        "state_nodes": [{"layer_id": "l1", "node_id": n} for n in "ab"]
        + [{"layer_id": "l2", "node_id": n} for n in "abc"],
    }
    snap = make(doc)
    state = default_session(snap)
    state.selection = {"edge": {"layer_from": "l1", "node_from": "a",
                                "layer_to": "l1", "node_to": "b"}}
    view = apply_filters(snap, state)
    d = view.to_json_dict()
    lit = [(r["layer_from"], r["node_from"], r["node_to"])
           for r in d["intralayer_edges"] if not r["dimmed"]]
    # the same canonical pair lights up in both layers; endpoints are
    # reported in canonical orientation regardless of the input order
    assert lit == [("l1", "a", "b"), ("l2", "a", "b")]


def test_select_node_payload():
    snap = load_fixture("threshold.json")
    info = select_node(snap, "a")
    assert info["participation"] == 2
    assert info["layers"] == ["top", "bottom"]
    assert len(info["intralayer_edges"]) == 2
    assert len(info["interlayer_edges"]) == 1


# -- layer comparison ------------------------------------------------------------------

def test_compare_identical_layers():
    snap = load_fixture("threshold.json")
    result = compare_layers(snap, "top", "top")
    assert result["j_node"] == 1.0
    assert result["j_edge"] == 1.0
    assert result["shared_node_count"] == 3


def test_compare_disjoint_edge_sets():
    snap = load_fixture("threshold.json")
    result = compare_layers(snap, "top", "bottom")
    assert result["j_node"] == 1.0  # same nodes
    assert result["j_edge"] == 0.0  # bottom has no intralayer edges
    assert result["shared_edges"] == []


def test_compare_histograms_share_grid():
    snap = load_fixture("two_layer.json")
    result = compare_layers(snap, "alpha", "beta", bins=4)
    hist = result["degree_histograms"]["k_intra"]
    assert hist["edges"]  # common bin edges
    assert len(hist["layer_a"]) == len(hist["layer_b"]) == len(hist["edges"]) - 1
    assert sum(hist["layer_a"]) == snap.node_count("alpha")
    assert sum(hist["layer_b"]) == snap.node_count("beta")


def test_compare_unknown_layer():
    snap = load_fixture("minimal.json")
    with pytest.raises(UnknownLayerError):
        compare_layers(snap, "solo", "ghost")


def test_compare_matches_metrics_pairwise():
    snap = load_fixture("bipartite.json")
    from mira import compute_bundle

    result = compare_layers(snap, "spring", "summer")
    pw = compute_bundle(snap).to_json_dict()["pairwise"]
    ids = pw["layer_ids"]
    i, j = ids.index("spring"), ids.index("summer")
    assert result["j_node"] == pw["j_node"][i][j]
    assert result["j_edge"] == pw["j_edge"][i][j]


# -- sessions ----------------------------------------------------------------------------

def test_session_round_trip_default():
    snap = load_fixture("two_layer.json")
    state = default_session(snap)
    blob = save_session(state)
    restored = load_session(blob)
    assert restored.active_mode == state.active_mode
    assert restored.filters == state.filters
    assert save_session(restored) == blob  # byte-stable re-save


def test_session_round_trip_with_everything():
    snap = load_fixture("threshold.json")
    state = default_session(snap)
    state.active_mode = "meta"
    state.meta_mode = "sum"
    state.layout_seed = 42
    state.layer_graph_seed = 7
    state.selection = {"node_id": "a"}
    state.filters = Filters(
        min_weight_intra=0.55,
        min_weight_inter=0.3,
        visible_layers=("top", "bottom"),
        node_query="",
        show_interlayer=True,
        attribute_filters=(AttributeFilter("node", "species", "eq", "x"),),
    )
    blob = save_session(state)
    restored = load_session(blob)
    assert restored.active_mode == "meta"
    assert restored.meta_mode == "sum"  # wire aliases survive verbatim
    assert restored.layout_seed == 42
    assert restored.selection == {"node_id": "a"}
    assert restored.filters == state.filters

    original_view = apply_filters(snap, state).to_json_dict()
    restored_view = apply_filters(restored.snapshot, restored).to_json_dict()
    assert original_view == restored_view


def test_session_envelope_shape():
    snap = load_fixture("minimal.json")
    doc = json.loads(save_session(default_session(snap)))
    assert doc["format_version"] == FORMAT_VERSION
    assert set(doc) == {"format_version", "network", "view_state"}
    assert doc["network"]["layers"][0]["layer_id"] == "solo"


def test_session_rejects_newer_version():
    snap = load_fixture("minimal.json")
    doc = json.loads(save_session(default_session(snap)))
    doc["format_version"] = FORMAT_VERSION + 1
    with pytest.raises(SessionVersionError):
        load_session(json.dumps(doc))


def test_session_rejects_corrupt_payloads():
    with pytest.raises(SessionCorruptError):
        load_session(b"{not json")
    with pytest.raises(SessionCorruptError):
        load_session(b"[]")
    with pytest.raises(SessionCorruptError):
        load_session(json.dumps({"format_version": 1, "network": {}, "view_state": {}}))

    snap = load_fixture("minimal.json")
    doc = json.loads(save_session(default_session(snap)))
    doc["view_state"]["active_mode"] = "spreadsheet"
    with pytest.raises(SessionCorruptError):
        load_session(json.dumps(doc))

    doc = json.loads(save_session(default_session(snap)))
    doc["view_state"]["filters"]["min_weight_intra"] = "heavy"
    with pytest.raises(SessionCorruptError):
        load_session(json.dumps(doc))


def test_session_embedded_network_is_revalidated():
    snap = load_fixture("minimal.json")
    doc = json.loads(save_session(default_session(snap)))
    doc["network"]["extended"].append(
        {"layer_from": "solo", "node_from": "a", "layer_to": "solo", "node_to": "ghost"})
    with pytest.raises(SessionCorruptError):
        load_session(json.dumps(doc))


def test_all_modes_round_trip():
    snap = load_fixture("minimal.json")
    for mode in MODES:
        state = default_session(snap)
        state.active_mode = mode
        assert load_session(save_session(state)).active_mode == mode
