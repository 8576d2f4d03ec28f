"""View state: filtering, selection, layer comparison, session files.

A session is the self-contained unit of persistence: the network
document plus everything needed to reproduce the rendered picture
(mode, filters, selection, layout parameters, seeds).  Applying the
filters to a snapshot yields a FilteredView, the exact element set a
renderer should draw, with selection expressed as dimming of the
non-highlighted remainder.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any

from .ingest import document_dict, stable_dumps, validate_document
from .layout import StackParams
from .metrics import DEFAULT_BIN_COUNT, intralayer_degree, jaccard_edges, jaccard_nodes
from .model import (
    INTRALAYER,
    EngineError,
    ExtendedEdge,
    NetworkSnapshot,
    intra_edge_key,
)

FORMAT_VERSION = 1

MODES = ("network", "map", "layer", "grid", "meta", "dashboard", "data")
META_WIRE_MODES = ("union", "count", "sum")
FILTER_OPS = ("eq", "ne", "lt", "le", "gt", "ge", "contains")
FILTER_TARGETS = ("node", "layer", "state")


class SessionError(EngineError):
    code = "session-error"


class SessionVersionError(SessionError):
    code = "version-mismatch"


class SessionCorruptError(SessionError):
    code = "corrupt-payload"


@dataclass(frozen=True)
class AttributeFilter:
    target: str  # node | layer | state
    key: str
    op: str
    value: float | str

    def matches(self, attributes: dict[str, Any]) -> bool:
        if self.key not in attributes:
            return False
        actual = attributes[self.key]
        if self.op == "contains":
            return str(self.value) in str(actual)
        if self.op in ("eq", "ne"):
            equal = actual == self.value or str(actual) == str(self.value)
            return equal if self.op == "eq" else not equal
        try:
            left, right = float(actual), float(self.value)
        except (TypeError, ValueError):
            return False
        return {"lt": left < right, "le": left <= right, "gt": left > right, "ge": left >= right}[self.op]

    def to_json_dict(self) -> dict[str, Any]:
        return {"target": self.target, "key": self.key, "op": self.op, "value": self.value}


@dataclass(frozen=True)
class Filters:
    min_weight_intra: float = 0.0
    min_weight_inter: float = 0.0
    visible_layers: tuple[str, ...] | None = None  # None means all layers
    node_query: str = ""
    show_interlayer: bool = False
    attribute_filters: tuple[AttributeFilter, ...] = ()

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "min_weight_intra": self.min_weight_intra,
            "min_weight_inter": self.min_weight_inter,
            "visible_layers": None if self.visible_layers is None else list(self.visible_layers),
            "node_query": self.node_query,
            "show_interlayer": self.show_interlayer,
            "attribute_filters": [f.to_json_dict() for f in self.attribute_filters],
        }


@dataclass
class SessionState:
    snapshot: NetworkSnapshot
    active_mode: str = "network"
    filters: Filters = field(default_factory=Filters)
    selection: dict[str, Any] | None = None  # {"node_id": ...} or {"edge": {...}}
    layout_seed: int = 0
    layer_graph_seed: int = 0
    layer_graph_mode: str = "force"
    stack_params: StackParams = field(default_factory=StackParams)
    meta_mode: str = "union"

    def view_state_dict(self) -> dict[str, Any]:
        return {
            "active_mode": self.active_mode,
            "filters": self.filters.to_json_dict(),
            "selection": self.selection,
            "layout": {
                "seed": self.layout_seed,
                "layer_graph_seed": self.layer_graph_seed,
                "layer_graph_mode": self.layer_graph_mode,
                "stack": self.stack_params.to_json_dict(),
            },
            "meta_mode": self.meta_mode,
        }


@dataclass(frozen=True)
class FilteredView:
    """Exactly what a renderer should draw: visible elements in canonical
    order, each flagged dimmed when a selection focuses elsewhere."""

    state_nodes: tuple[tuple[str, str], ...]
    intra_edges: tuple[ExtendedEdge, ...]
    inter_edges: tuple[ExtendedEdge, ...]
    dimmed_state_nodes: frozenset[tuple[str, str]]
    dimmed_intra: frozenset[tuple[str, tuple[str, str]]]
    dimmed_inter: frozenset[tuple[tuple[str, str], tuple[str, str]]]

    def to_json_dict(self) -> dict[str, Any]:
        def edge_dict(e: ExtendedEdge, dimmed: bool) -> dict[str, Any]:
            return {
                "layer_from": e.layer_from,
                "node_from": e.node_from,
                "layer_to": e.layer_to,
                "node_to": e.node_to,
                "weight": e.weight,
                "dimmed": dimmed,
            }

        return {
            "state_nodes": [
                {"layer_id": lid, "node_id": nid, "dimmed": (lid, nid) in self.dimmed_state_nodes}
                for lid, nid in self.state_nodes
            ],
            "intralayer_edges": [
                edge_dict(e, (e.layer_from, intra_pair(e)) in self.dimmed_intra) for e in self.intra_edges
            ],
            "interlayer_edges": [
                edge_dict(e, (e.source, e.target) in self.dimmed_inter) for e in self.inter_edges
            ],
            "counts": {
                "state_nodes": len(self.state_nodes),
                "intralayer_edges": len(self.intra_edges),
                "interlayer_edges": len(self.inter_edges),
            },
        }


def intra_pair(e: ExtendedEdge) -> tuple[str, str]:
    return (e.node_from, e.node_to)


def _element_attributes(snapshot: NetworkSnapshot, target: str, lid: str, nid: str) -> dict[str, Any]:
    if target == "node":
        node = snapshot.node_by_id[nid]
        attrs: dict[str, Any] = dict(node.extra_attributes)
        if node.node_type is not None:
            attrs["node_type"] = node.node_type
        attrs["node_id"] = nid
        return attrs
    if target == "layer":
        layer = snapshot.layer_by_id[lid]
        attrs = dict(layer.extra_attributes)
        attrs.update({"layer_id": lid, "display_name": layer.display_name})
        return attrs
    return dict(snapshot.state_by_key[(lid, nid)].per_layer_attributes)


def _state_visible(snapshot: NetworkSnapshot, filters: Filters, lid: str, nid: str) -> bool:
    if filters.visible_layers is not None and lid not in filters.visible_layers:
        return False
    if filters.node_query and filters.node_query.lower() not in nid.lower():
        return False
    for f in filters.attribute_filters:
        if f.target not in FILTER_TARGETS:
            continue
        if not f.matches(_element_attributes(snapshot, f.target, lid, nid)):
            return False
    return True


def _selection_highlight(
    snapshot: NetworkSnapshot,
    selection: dict[str, Any] | None,
    visible_intra: list[ExtendedEdge],
    visible_inter: list[ExtendedEdge],
) -> tuple[set, set, set] | None:
    """Highlighted (state node, intra key, inter key) sets, or None when
    nothing valid is selected."""
    if not selection:
        return None
    nodes: set[tuple[str, str]] = set()
    intra: set[tuple[str, tuple[str, str]]] = set()
    inter: set[tuple[tuple[str, str], tuple[str, str]]] = set()

    if "node_id" in selection:
        nid = selection["node_id"]
        if nid not in snapshot.node_by_id:
            return None
        nodes.update((lid, nid) for lid in snapshot.layer_ids if (lid, nid) in snapshot.state_by_key)
        for e in visible_intra:
            if nid in (e.node_from, e.node_to):
                intra.add((e.layer_from, intra_pair(e)))
                nodes.update({(e.layer_from, e.node_from), (e.layer_to, e.node_to)})
        for e in visible_inter:
            if nid in (e.node_from, e.node_to):
                inter.add((e.source, e.target))
                nodes.update({e.source, e.target})
        return nodes, intra, inter

    edge_ref = selection.get("edge")
    if not isinstance(edge_ref, dict):
        return None
    try:
        lf, nf = edge_ref["layer_from"], edge_ref["node_from"]
        lt, nt = edge_ref["layer_to"], edge_ref["node_to"]
    except KeyError:
        return None
    if lf == lt:
        # an intralayer link is tracked across every layer it occurs in
        wanted = intra_edge_key(nf, nt, snapshot.directed)
        for e in visible_intra:
            if intra_edge_key(e.node_from, e.node_to, snapshot.directed) == wanted:
                intra.add((e.layer_from, intra_pair(e)))
                nodes.update({(e.layer_from, e.node_from), (e.layer_to, e.node_to)})
    else:
        for e in visible_inter:
            pair = {e.source, e.target}
            if pair == {(lf, nf), (lt, nt)}:
                inter.add((e.source, e.target))
                nodes.update({e.source, e.target})
    if not (nodes or intra or inter):
        return None
    return nodes, intra, inter


def apply_filters(snapshot: NetworkSnapshot, state: SessionState) -> FilteredView:
    """Resolve the session's filters and selection into a drawable set.

    Thresholds are inclusive lower bounds, cross-layer links stay hidden
    unless the session turns them on, and an edge is shown only when both
    endpoints are.  With a live selection, visible elements outside the
    highlighted neighborhood come back flagged dimmed.
    """
    filters = state.filters
    visible_nodes = [key for key in snapshot.state_order if _state_visible(snapshot, filters, *key)]
    node_set = set(visible_nodes)

    visible_intra: list[ExtendedEdge] = []
    for lid in snapshot.layer_ids:
        layer_edges = snapshot.intra_edges(lid)
        for key in sorted(layer_edges):
            e = layer_edges[key]
            if e.weight < filters.min_weight_intra:
                continue
            if (lid, e.node_from) in node_set and (lid, e.node_to) in node_set:
                visible_intra.append(e)

    visible_inter: list[ExtendedEdge] = []
    if filters.show_interlayer:
        ordered = sorted(
            snapshot.interlayer_edges(),
            key=lambda e: (
                snapshot.layer_index[e.layer_from],
                snapshot.layer_index[e.layer_to],
                e.node_from,
                e.node_to,
            ),
        )
        for e in ordered:
            if e.weight < filters.min_weight_inter:
                continue
            if e.source in node_set and e.target in node_set:
                visible_inter.append(e)

    highlight = _selection_highlight(snapshot, state.selection, visible_intra, visible_inter)
    if highlight is None:
        dim_nodes: frozenset = frozenset()
        dim_intra: frozenset = frozenset()
        dim_inter: frozenset = frozenset()
    else:
        h_nodes, h_intra, h_inter = highlight
        dim_nodes = frozenset(k for k in visible_nodes if k not in h_nodes)
        dim_intra = frozenset(
            (e.layer_from, intra_pair(e)) for e in visible_intra if (e.layer_from, intra_pair(e)) not in h_intra
        )
        dim_inter = frozenset((e.source, e.target) for e in visible_inter if (e.source, e.target) not in h_inter)

    return FilteredView(
        state_nodes=tuple(visible_nodes),
        intra_edges=tuple(visible_intra),
        inter_edges=tuple(visible_inter),
        dimmed_state_nodes=dim_nodes,
        dimmed_intra=dim_intra,
        dimmed_inter=dim_inter,
    )


def select_node(snapshot: NetworkSnapshot, node_id: str) -> dict[str, Any]:
    """Everything incident to one physical node, layer by layer."""
    snapshot.require_node(node_id)
    layers = [lid for lid in snapshot.layer_ids if (lid, node_id) in snapshot.state_by_key]

    def edge_dict(e: ExtendedEdge) -> dict[str, Any]:
        return {
            "layer_from": e.layer_from,
            "node_from": e.node_from,
            "layer_to": e.layer_to,
            "node_to": e.node_to,
            "weight": e.weight,
        }

    intra = []
    for lid in snapshot.layer_ids:
        layer_edges = snapshot.intra_edges(lid)
        for key in sorted(layer_edges):
            e = layer_edges[key]
            if node_id in (e.node_from, e.node_to):
                intra.append(edge_dict(e))
    inter = [
        edge_dict(e)
        for e in sorted(
            snapshot.interlayer_edges(),
            key=lambda e: (snapshot.layer_index[e.layer_from], snapshot.layer_index[e.layer_to], e.node_from, e.node_to),
        )
        if node_id in (e.node_from, e.node_to)
    ]
    return {
        "node_id": node_id,
        "participation": len(layers),
        "layers": layers,
        "state_nodes": [{"layer_id": lid, "node_id": node_id} for lid in layers],
        "intralayer_edges": intra,
        "interlayer_edges": inter,
    }


def _grid_counts(values: list[float], lo: float, hi: float, bins: int) -> list[int]:
    counts = [0] * bins
    width = (hi - lo) / bins
    for v in values:
        idx = min(int((v - lo) / width), bins - 1) if width > 0 else 0
        counts[idx] += 1
    return counts


def compare_layers(snapshot: NetworkSnapshot, a: str, b: str, bins: int = DEFAULT_BIN_COUNT) -> dict[str, Any]:
    """Pairwise layer panel: shared elements, similarity, and degree
    distributions binned on one common grid."""
    snapshot.require_layer(a)
    snapshot.require_layer(b)
    shared_nodes = sorted(snapshot.presence_set(a) & snapshot.presence_set(b))
    shared_edges = sorted(snapshot.edge_keys(a) & snapshot.edge_keys(b))

    directions = ("out", "in") if snapshot.directed else ("undirected",)
    histograms: dict[str, Any] = {}
    for direction in directions:
        label = "k_intra" if direction == "undirected" else f"k_intra_{direction}"
        values_a = [float(intralayer_degree(snapshot, nid, a, direction)) for nid in sorted(snapshot.presence(a))]
        values_b = [float(intralayer_degree(snapshot, nid, b, direction)) for nid in sorted(snapshot.presence(b))]
        combined = values_a + values_b
        if not combined:
            histograms[label] = {"edges": [], "layer_a": [], "layer_b": []}
            continue
        lo, hi = min(combined), max(combined)
        if lo == hi:
            edges = [lo - 0.5, lo + 0.5]
            histograms[label] = {
                "edges": edges,
                "layer_a": [len(values_a)],
                "layer_b": [len(values_b)],
            }
            continue
        width = (hi - lo) / bins
        edges = [lo + i * width for i in range(bins)] + [hi]
        histograms[label] = {
            "edges": edges,
            "layer_a": _grid_counts(values_a, lo, hi, bins),
            "layer_b": _grid_counts(values_b, lo, hi, bins),
        }

    result: dict[str, Any] = {
        "layer_a": a,
        "layer_b": b,
        "shared_nodes": shared_nodes,
        "shared_node_count": len(shared_nodes),
        "j_node": jaccard_nodes(snapshot, a, b),
        "shared_edges": [list(pair) for pair in shared_edges],
        "shared_edge_count": len(shared_edges),
        "j_edge": jaccard_edges(snapshot, a, b),
        "degree_histograms": histograms,
    }
    if snapshot.layer_by_id[a].bipartite and snapshot.layer_by_id[b].bipartite:
        labels = sorted(set(snapshot.bipartite_sets(a)) & set(snapshot.bipartite_sets(b)))
        result["j_node_per_set"] = {label: jaccard_nodes(snapshot, a, b, label) for label in labels}
    return result


# -- persistence ---------------------------------------------------------


def save_session(state: SessionState) -> bytes:
    """Self-contained session file: network document plus view state."""
    envelope = {
        "format_version": FORMAT_VERSION,
        "network": document_dict(state.snapshot),
        "view_state": state.view_state_dict(),
    }
    return stable_dumps(envelope)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise SessionCorruptError(message)


def load_session(data: bytes | str) -> SessionState:
    """Rebuild a session from its file; the inverse of save_session.

    Rejects files written by a newer format; anything structurally
    unsound raises SessionCorruptError.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SessionCorruptError(f"session file is not UTF-8: {exc}") from None
    try:
        envelope = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SessionCorruptError(f"session file is not valid JSON: {exc}") from None
    _require(isinstance(envelope, dict), "session envelope must be an object")

    version = envelope.get("format_version")
    _require(isinstance(version, int) and not isinstance(version, bool), "format_version must be an integer")
    if version > FORMAT_VERSION:
        raise SessionVersionError(f"session format {version} is newer than supported {FORMAT_VERSION}")

    snapshot, report = validate_document(envelope.get("network"))
    if snapshot is None:
        first = report.errors[0] if report.errors else None
        detail = f": {first.code} at {first.path}" if first else ""
        raise SessionCorruptError(f"embedded network is invalid{detail}")

    view = envelope.get("view_state", {})
    _require(isinstance(view, dict), "view_state must be an object")

    active_mode = view.get("active_mode", "network")
    _require(active_mode in MODES, f"active_mode must be one of {MODES}")
    meta_mode = view.get("meta_mode", "union")
    _require(meta_mode in META_WIRE_MODES, f"meta_mode must be one of {META_WIRE_MODES}")

    filters = _filters_from_dict(view.get("filters", {}))

    selection = view.get("selection")
    if selection is not None:
        _require(isinstance(selection, dict) and ("node_id" in selection or "edge" in selection),
                 "selection must name a node_id or an edge")

    layout = view.get("layout", {})
    _require(isinstance(layout, dict), "layout must be an object")
    stack_raw = layout.get("stack", {})
    _require(isinstance(stack_raw, dict), "layout.stack must be an object")
    stack_fields = {}
    for name, default in (("scale", 1.0), ("compression", 0.5), ("layer_gap", 1.0)):
        value = stack_raw.get(name, default)
        _require(isinstance(value, (int, float)) and not isinstance(value, bool), f"stack.{name} must be a number")
        stack_fields[name] = float(value)
    for name in ("shear_x", "shear_y"):
        value = stack_raw.get(name)
        if value is not None:
            _require(isinstance(value, (int, float)) and not isinstance(value, bool), f"stack.{name} must be a number")
            stack_fields[name] = float(value)

    def _int_field(obj: dict, name: str, default: int) -> int:
        value = obj.get(name, default)
        _require(isinstance(value, int) and not isinstance(value, bool), f"{name} must be an integer")
        return value

    layer_graph_mode = layout.get("layer_graph_mode", "force")
    _require(layer_graph_mode in ("force", "geographic"), "layer_graph_mode must be 'force' or 'geographic'")

    return SessionState(
        snapshot=snapshot,
        active_mode=active_mode,
        filters=filters,
        selection=selection,
        layout_seed=_int_field(layout, "seed", 0),
        layer_graph_seed=_int_field(layout, "layer_graph_seed", 0),
        layer_graph_mode=layer_graph_mode,
        stack_params=StackParams(**stack_fields),
        meta_mode=meta_mode,
    )


def _filters_from_dict(raw: Any) -> Filters:
    _require(isinstance(raw, dict), "filters must be an object")
    out: dict[str, Any] = {}
    for name in ("min_weight_intra", "min_weight_inter"):
        value = raw.get(name, 0.0)
        _require(isinstance(value, (int, float)) and not isinstance(value, bool), f"{name} must be a number")
        out[name] = float(value)
    visible = raw.get("visible_layers")
    if visible is not None:
        _require(isinstance(visible, list) and all(isinstance(x, str) for x in visible),
                 "visible_layers must be a list of layer ids")
        visible = tuple(visible)
    out["visible_layers"] = visible
    query = raw.get("node_query", "")
    _require(isinstance(query, str), "node_query must be a string")
    out["node_query"] = query
    show = raw.get("show_interlayer", False)
    _require(isinstance(show, bool), "show_interlayer must be a boolean")
    out["show_interlayer"] = show

    parsed: list[AttributeFilter] = []
    attr_raw = raw.get("attribute_filters", [])
    _require(isinstance(attr_raw, list), "attribute_filters must be a list")
    for item in attr_raw:
        _require(isinstance(item, dict), "attribute filter must be an object")
        target, key, op = item.get("target"), item.get("key"), item.get("op")
        _require(target in FILTER_TARGETS, f"filter target must be one of {FILTER_TARGETS}")
        _require(isinstance(key, str) and bool(key), "filter key must be a non-empty string")
        _require(op in FILTER_OPS, f"filter op must be one of {FILTER_OPS}")
        value = item.get("value")
        _require(isinstance(value, (int, float, str)) and not isinstance(value, bool), "filter value must be scalar")
        parsed.append(AttributeFilter(target=target, key=key, op=op, value=value))
    out["attribute_filters"] = tuple(parsed)
    return Filters(**out)


def default_session(snapshot: NetworkSnapshot) -> SessionState:
    return SessionState(snapshot=snapshot)


def with_filters(state: SessionState, **changes: Any) -> SessionState:
    """Copy of the session with some filter fields replaced."""
    return replace(state, filters=replace(state.filters, **changes))
