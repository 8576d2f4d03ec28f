import json

import pytest

from mira import ExtendedEdge, UnknownNodeError, build_meta, canonicalize, meta_degree, meta_strength, parse_json, stable_dumps
from mira.meta import MODE_SUM_OCCURRENCE, MODE_SUM_WEIGHTS, MODE_UNION, MODES
from conftest import load_fixture


def make(doc):
    snapshot, report = parse_json(json.dumps(doc))
    assert snapshot is not None, [i.to_json_dict() for i in report.errors]
    return snapshot


def layered(edges, directed=False):
    """edges: list of (layer, node_from, node_to, weight)."""
    layer_ids = sorted({e[0] for e in edges})
    node_ids = sorted({e[1] for e in edges} | {e[2] for e in edges})
    return make({
        "directed": directed,
        "directed_interlayer": directed,
        "layers": [{"layer_id": lid} for lid in layer_ids],
        "nodes": [{"node_id": n} for n in node_ids],
        "extended": [
            {"layer_from": lid, "node_from": a, "layer_to": lid, "node_to": b, "weight": w}
            for lid, a, b, w in edges
        ],
        "state_nodes": [
            {"layer_id": lid, "node_id": n}
            for lid in layer_ids for n in node_ids
        ],
    })


# -- canonicalization -----------------------------------------------------------

def test_canonicalize_undirected_sorts():
    key = canonicalize(ExtendedEdge("l1", "B", "l1", "A"), directed=False)
    assert (key.node_u, key.node_v) == ("A", "B")
    assert not key.ordered


def test_canonicalize_directed_preserves_order():
    key = canonicalize(ExtendedEdge("l1", "B", "l1", "A"), directed=True)
    assert (key.node_u, key.node_v) == ("B", "A")
    assert key.ordered


def test_canonicalize_rejects_interlayer():
    with pytest.raises(ValueError):
        canonicalize(ExtendedEdge("l1", "A", "l2", "A"), directed=False)


def test_opposite_orientations_collide_across_layers():
    snap = layered([("l1", "A", "B", 1.0), ("l2", "B", "A", 1.0)])
    m = build_meta(snap, MODE_SUM_OCCURRENCE)
    assert set(m.edges) == {("A", "B")}
    assert m.edges[("A", "B")].weight == 2.0


# -- build_meta -----------------------------------------------------------------

def test_three_modes_on_shared_edge():
    snap = layered([("l1", "A", "B", 1.0), ("l2", "A", "B", 2.0), ("l3", "A", "B", 3.0)])
    assert build_meta(snap, MODE_UNION).edges[("A", "B")].weight == 1.0
    assert build_meta(snap, MODE_SUM_OCCURRENCE).edges[("A", "B")].weight == 3.0
    assert build_meta(snap, MODE_SUM_WEIGHTS).edges[("A", "B")].weight == 6.0


def test_single_layer_fixpoint():
    snap = load_fixture("selfloops.json")
    m = build_meta(snap, MODE_SUM_WEIGHTS)
    weights = {pair: e.weight for pair, e in m.edges.items()}
    assert weights == {("a", "a"): 4.0, ("a", "b"): 1.0, ("a", "c"): 2.0}


def test_edge_set_identical_across_modes():
    snap = load_fixture("two_layer.json")
    keys = [set(build_meta(snap, mode).edges) for mode in MODES]
    assert keys[0] == keys[1] == keys[2]


def test_interlayer_edges_ignored():
    doc = {
        "layers": [{"layer_id": "l1"}, {"layer_id": "l2"}],
        "nodes": [{"node_id": "a"}, {"node_id": "b"}],
        "extended": [
            {"layer_from": "l1", "node_from": "a", "layer_to": "l2", "node_to": "b"},
            {"layer_from": "l1", "node_from": "a", "layer_to": "l2", "node_to": "a"},
        ],
        "state_nodes": [
            {"layer_id": "l1", "node_id": "a"},
            {"layer_id": "l2", "node_id": "a"},
            {"layer_id": "l2", "node_id": "b"},
        ],
    }
    m = build_meta(make(doc), MODE_UNION)
    assert m.edges == {}
    assert m.node_ids == ("a", "b")  # isolated nodes still appear


def test_provenance_lists_contributing_layers():
    snap = layered([("l1", "A", "B", 1.5), ("l3", "A", "B", 0.5), ("l2", "C", "A", 1.0)])
    m = build_meta(snap, MODE_SUM_WEIGHTS)
    ab = m.edges[("A", "B")]
    assert [layer_id for layer_id, _ in ab.layers] == ["l1", "l3"]
    assert dict(ab.layers) == {"l1": 1.5, "l3": 0.5}


# -- meta degree / strength --------------------------------------------------------

def test_meta_degree_star():
    snap = layered([("l1", "v", "a", 1.0), ("l2", "v", "b", 1.0), ("l3", "v", "c", 1.0)])
    m = build_meta(snap, MODE_UNION)
    assert meta_degree(m, "v") == 3
    assert meta_strength(m, "v") == 3.0  # union: s_meta == k_meta


def test_meta_degree_distinct_neighbors_not_occurrences():
    snap = layered([(f"l{i}", "v", "w", 1.0) for i in range(5)])
    m = build_meta(snap, MODE_SUM_OCCURRENCE)
    assert meta_degree(m, "v") == 1
    assert meta_strength(m, "v") == 5.0


def test_meta_strength_sum_occurrence():
    snap = layered(
        [(f"l{i}", "v", "a", 1.0) for i in range(2)]
        + [(f"l{i}", "v", "b", 1.0) for i in range(3)]
    )
    m = build_meta(snap, MODE_SUM_OCCURRENCE)
    assert meta_strength(m, "v") == 5.0


def test_meta_isolated_node():
    doc = {
        "layers": [{"layer_id": "l1"}],
        "nodes": [{"node_id": "a"}, {"node_id": "b"}, {"node_id": "iso"}],
        "extended": [
            {"layer_from": "l1", "node_from": "a", "layer_to": "l1", "node_to": "b"},
        ],
        "state_nodes": [
            {"layer_id": "l1", "node_id": "a"},
            {"layer_id": "l1", "node_id": "b"},
            {"layer_id": "l1", "node_id": "iso"},
        ],
    }
    m = build_meta(make(doc), MODE_UNION)
    assert meta_degree(m, "iso") == 0
    assert meta_strength(m, "iso") == 0.0
    with pytest.raises(UnknownNodeError):
        meta_degree(m, "ghost")


def test_self_loops_carried_but_excluded_from_scores():
    snap = load_fixture("selfloops.json")
    m = build_meta(snap, MODE_UNION)
    assert ("a", "a") in m.edges
    assert meta_degree(m, "a") == 2
    assert meta_strength(m, "a") == 2.0


def test_directed_projection_keeps_ordered_keys():
    snap = layered([("l1", "A", "B", 1.0), ("l2", "B", "A", 1.0)], directed=True)
    m = build_meta(snap, MODE_SUM_OCCURRENCE)
    assert set(m.edges) == {("A", "B"), ("B", "A")}
    assert meta_degree(m, "A", "out") == 1
    assert meta_degree(m, "A", "in") == 1


def test_sum_weights_cross_checks_intralayer_strength():
    snap = load_fixture("two_layer.json")
    m = build_meta(snap, MODE_SUM_WEIGHTS)
    from mira import intralayer_strength
    for node_id in ("a", "b", "c"):
        expected = sum(
            intralayer_strength(snap, node_id, lid)
            for lid in snap.layer_ids
            if (lid, node_id) in snap.state_by_key
        )
        assert meta_strength(m, node_id) == pytest.approx(expected)


def test_union_is_sign_of_sum_occurrence():
    snap = load_fixture("two_layer.json")
    union = {pair: e.weight for pair, e in build_meta(snap, MODE_UNION).edges.items()}
    occ = {pair: e.weight for pair, e in build_meta(snap, MODE_SUM_OCCURRENCE).edges.items()}
    assert set(union) == set(occ)
    for key, w in occ.items():
        assert union[key] == 1.0
        assert 1 <= w <= snap.layer_count


def test_reversal_bit_identity():
    from conftest import FIXTURES

    doc = json.loads((FIXTURES / "valid" / "two_layer.json").read_text())
    reversed_doc = json.loads(json.dumps(doc))
    for record in reversed_doc["extended"]:
        record["layer_from"], record["layer_to"] = record["layer_to"], record["layer_from"]
        record["node_from"], record["node_to"] = record["node_to"], record["node_from"]
    snap_a = make(doc)
    snap_b = make(reversed_doc)
    for mode in MODES:
        a = stable_dumps(build_meta(snap_a, mode).to_json_dict())
        b = stable_dumps(build_meta(snap_b, mode).to_json_dict())
        assert a == b


def test_serialization_shape():
    snap = load_fixture("two_layer.json")
    d = build_meta(snap, MODE_UNION).to_json_dict()
    assert d["mode"] == "union"
    assert d["directed"] is False
    assert [n["node_id"] for n in d["nodes"]] == ["a", "b", "c"]
    for edge in d["edges"]:
        assert set(edge) == {"node_from", "node_to", "weight", "layers"}
