"""Parsing, validation, and canonical serialization of network documents.

The wire schema is a JSON object with four required arrays (``layers``,
``nodes``, ``extended``, ``state_nodes``) plus two optional booleans
(``directed``, ``directed_interlayer``).  A CSV path accepts the same
information as tables, the mandatory one being the extended edge list;
missing auxiliary tables are synthesized from edge endpoints.  Both paths
meet in a single document validator, so a network expressed either way
produces the same snapshot.

Validation is total: any input terminates in either a snapshot or a
non-empty error list, every error carrying a machine-readable code and a
locator into the input document.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable

from .model import (
    INTRALAYER,
    ExtendedEdge,
    LayerDef,
    NetworkSnapshot,
    PhysicalNode,
    StateNode,
    classify_edge,
    inter_edge_key,
    intra_edge_key,
)

REQUIRED_ARRAYS = ("layers", "nodes", "extended", "state_nodes")
EDGE_FIELDS = ("layer_from", "node_from", "layer_to", "node_to")

# error codes
E_INVALID_JSON = "invalid-json"
E_MALFORMED_DOCUMENT = "malformed-document"
E_MISSING_ARRAY = "missing-required-array"
E_MALFORMED_FIELD = "malformed-field-type"
E_EMPTY_LAYERS = "empty-layers-array"
E_DUPLICATE_ID = "duplicate-id"
E_DUPLICATE_EDGE = "duplicate-edge"
E_UNKNOWN_REFERENCE = "unknown-reference"
E_BIPARTITE_NODE_TYPE = "bipartite-missing-node-type"
E_BIPARTITE_ARITY = "bipartite-set-arity"
E_INVALID_WEIGHT = "invalid-weight"
E_INCOMPLETE_COORDINATES = "incomplete-coordinates"
E_MISSING_COLUMN = "missing-required-column"
E_NON_NUMERIC_WEIGHT = "non-numeric-weight"
E_EMPTY_EDGES = "empty-edges-table"

# warning codes
W_FLAG_CONTRADICTION = "flag-contradiction"
W_UNKNOWN_EDGE_FIELD = "unknown-edge-field"
W_BIPARTITE_SAME_SET = "bipartite-same-set-edge"


@dataclass(frozen=True)
class Issue:
    code: str
    path: str
    message: str

    def to_json_dict(self) -> dict[str, str]:
        return {"code": self.code, "path": self.path, "message": self.message}


@dataclass
class ValidationReport:
    errors: list[Issue] = field(default_factory=list)
    warnings: list[Issue] = field(default_factory=list)
    directed: bool = False
    directed_interlayer: bool = False
    inferred_from: str = "default"

    @property
    def ok(self) -> bool:
        return not self.errors

    def error(self, code: str, path: str, message: str) -> None:
        self.errors.append(Issue(code, path, message))

    def warn(self, code: str, path: str, message: str) -> None:
        self.warnings.append(Issue(code, path, message))

    def error_codes(self) -> set[str]:
        return {issue.code for issue in self.errors}

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "valid": self.ok,
            "errors": [i.to_json_dict() for i in self.errors],
            "warnings": [i.to_json_dict() for i in self.warnings],
            "normalized_flags": {
                "directed": self.directed,
                "directed_interlayer": self.directed_interlayer,
                "inferred_from": self.inferred_from,
            },
        }


def normalize_directedness(
    explicit_directed: bool | None,
    explicit_directed_interlayer: bool | None,
    intralayer_flags: Iterable[bool | None] = (),
    interlayer_flags: Iterable[bool | None] = (),
) -> tuple[bool, bool, str, bool]:
    """Resolve the two directedness flags.

    Explicit values win; an absent flag is inferred from the per-link
    ``directed`` properties of its edge class; both default to false.  A
    true intralayer flag forces the interlayer flag to true.  Returns
    ``(directed, directed_interlayer, inferred_from, overridden)`` where
    ``overridden`` marks an explicit interlayer ``false`` that had to be
    discarded.
    """
    used_per_link = False
    if explicit_directed is not None:
        directed = explicit_directed
    else:
        directed = any(f is True for f in intralayer_flags)
        used_per_link = used_per_link or directed
    if explicit_directed_interlayer is not None:
        directed_interlayer = explicit_directed_interlayer
    else:
        directed_interlayer = any(f is True for f in interlayer_flags)
        used_per_link = used_per_link or directed_interlayer

    overridden = False
    if directed and not directed_interlayer:
        overridden = explicit_directed_interlayer is False
        directed_interlayer = True

    if explicit_directed is not None or explicit_directed_interlayer is not None:
        inferred_from = "explicit"
    elif used_per_link:
        inferred_from = "per_link"
    else:
        inferred_from = "default"
    return directed, directed_interlayer, inferred_from, overridden


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _attr_value(value: Any) -> float | str | None:
    """Normalize an attribute value to real-or-string; None when the value
    is not representable (nested structures, booleans, non-finite)."""
    if isinstance(value, str):
        return value
    if _is_number(value):
        v = float(value)
        return v if math.isfinite(v) else None
    return None


def _read_flag(doc: dict, name: str, report: ValidationReport) -> bool | None:
    value = doc.get(name)
    if value is None:
        return None
    if isinstance(value, bool):
        return value
    report.error(E_MALFORMED_FIELD, f"/{name}", f"{name} must be a boolean, got {type(value).__name__}")
    return None


def _parse_layers(raw: list, report: ValidationReport) -> dict[str, LayerDef]:
    layers: dict[str, LayerDef] = {}
    for i, item in enumerate(raw):
        path = f"/layers/{i}"
        if not isinstance(item, dict):
            report.error(E_MALFORMED_FIELD, path, "layer entry must be an object")
            continue
        layer_id = item.get("layer_id")
        if not isinstance(layer_id, str) or not layer_id:
            report.error(E_MALFORMED_FIELD, f"{path}/layer_id", "layer_id must be a non-empty string")
            continue
        if layer_id in layers:
            report.error(E_DUPLICATE_ID, f"{path}/layer_id", f"duplicate layer_id {layer_id!r}")
            continue

        display_name = item.get("display_name", layer_id)
        if not isinstance(display_name, str):
            report.error(E_MALFORMED_FIELD, f"{path}/display_name", "display_name must be a string")
            display_name = layer_id

        coords: dict[str, float | None] = {"latitude": None, "longitude": None}
        bounds = {"latitude": 90.0, "longitude": 180.0}
        coord_malformed = False
        for key, bound in bounds.items():
            value = item.get(key)
            if value is None:
                continue
            if not _is_number(value) or not math.isfinite(float(value)) or abs(float(value)) > bound:
                report.error(E_MALFORMED_FIELD, f"{path}/{key}", f"{key} must be a number in [-{bound}, {bound}]")
                coord_malformed = True
                continue
            coords[key] = float(value)
        if (coords["latitude"] is None) != (coords["longitude"] is None):
            if not coord_malformed:
                report.error(E_INCOMPLETE_COORDINATES, path, "latitude and longitude must be given together")
            coords = {"latitude": None, "longitude": None}

        bipartite = item.get("bipartite", False)
        if not isinstance(bipartite, bool):
            report.error(E_MALFORMED_FIELD, f"{path}/bipartite", "bipartite must be a boolean")
            bipartite = False

        extras: dict[str, float | str] = {}
        known = {"layer_id", "display_name", "latitude", "longitude", "bipartite"}
        for key, value in item.items():
            if key in known:
                continue
            attr = _attr_value(value)
            if attr is None:
                report.error(E_MALFORMED_FIELD, f"{path}/{key}", "attribute values must be finite numbers or strings")
                continue
            extras[key] = attr

        layers[layer_id] = LayerDef(
            layer_id=layer_id,
            display_name=display_name,
            latitude=coords["latitude"],
            longitude=coords["longitude"],
            bipartite=bipartite,
            extra_attributes=extras,
        )
    return layers


def _parse_nodes(raw: list, report: ValidationReport) -> dict[str, PhysicalNode]:
    nodes: dict[str, PhysicalNode] = {}
    for i, item in enumerate(raw):
        path = f"/nodes/{i}"
        if not isinstance(item, dict):
            report.error(E_MALFORMED_FIELD, path, "node entry must be an object")
            continue
        node_id = item.get("node_id")
        if not isinstance(node_id, str) or not node_id:
            report.error(E_MALFORMED_FIELD, f"{path}/node_id", "node_id must be a non-empty string")
            continue
        if node_id in nodes:
            report.error(E_DUPLICATE_ID, f"{path}/node_id", f"duplicate node_id {node_id!r}")
            continue
        node_type = item.get("node_type")
        if node_type is not None and not isinstance(node_type, str):
            report.error(E_MALFORMED_FIELD, f"{path}/node_type", "node_type must be a string")
            node_type = None
        extras: dict[str, float | str] = {}
        for key, value in item.items():
            if key in ("node_id", "node_type"):
                continue
            attr = _attr_value(value)
            if attr is None:
                report.error(E_MALFORMED_FIELD, f"{path}/{key}", "attribute values must be finite numbers or strings")
                continue
            extras[key] = attr
        nodes[node_id] = PhysicalNode(node_id=node_id, node_type=node_type, extra_attributes=extras)
    return nodes


def _parse_state_nodes(
    raw: list,
    layers: dict[str, LayerDef],
    nodes: dict[str, PhysicalNode],
    report: ValidationReport,
) -> tuple[dict[tuple[str, str], StateNode], dict[tuple[str, str], int]]:
    state: dict[tuple[str, str], StateNode] = {}
    positions: dict[tuple[str, str], int] = {}
    for i, item in enumerate(raw):
        path = f"/state_nodes/{i}"
        if not isinstance(item, dict):
            report.error(E_MALFORMED_FIELD, path, "state node entry must be an object")
            continue
        layer_id = item.get("layer_id")
        node_id = item.get("node_id")
        if not isinstance(layer_id, str) or not layer_id or not isinstance(node_id, str) or not node_id:
            report.error(E_MALFORMED_FIELD, path, "state nodes need string layer_id and node_id")
            continue
        if layer_id not in layers:
            report.error(E_UNKNOWN_REFERENCE, f"{path}/layer_id", f"state node references unknown layer {layer_id!r}")
            continue
        if node_id not in nodes:
            report.error(E_UNKNOWN_REFERENCE, f"{path}/node_id", f"state node references unknown node {node_id!r}")
            continue
        key = (layer_id, node_id)
        if key in state:
            report.error(E_DUPLICATE_ID, path, f"duplicate state node ({layer_id!r}, {node_id!r})")
            continue
        extras: dict[str, float | str] = {}
        for k, value in item.items():
            if k in ("layer_id", "node_id"):
                continue
            attr = _attr_value(value)
            if attr is None:
                report.error(E_MALFORMED_FIELD, f"{path}/{k}", "attribute values must be finite numbers or strings")
                continue
            extras[k] = attr
        state[key] = StateNode(layer_id=layer_id, node_id=node_id, per_layer_attributes=extras)
        positions[key] = i
    return state, positions


@dataclass
class _RawEdge:
    index: int
    layer_from: str
    node_from: str
    layer_to: str
    node_to: str
    weight: float
    directed: bool | None
    classification: str


def _parse_edges(raw: list, report: ValidationReport) -> list[_RawEdge]:
    edges: list[_RawEdge] = []
    warned_fields: set[str] = set()
    for i, item in enumerate(raw):
        path = f"/extended/{i}"
        if not isinstance(item, dict):
            report.error(E_MALFORMED_FIELD, path, "edge entry must be an object")
            continue
        endpoints: dict[str, str] = {}
        bad = False
        for name in EDGE_FIELDS:
            value = item.get(name)
            if not isinstance(value, str) or not value:
                report.error(E_MALFORMED_FIELD, f"{path}/{name}", f"{name} must be a non-empty string")
                bad = True
                continue
            endpoints[name] = value
        if bad:
            continue

        weight = item.get("weight", 1.0)
        if not _is_number(weight):
            report.error(E_MALFORMED_FIELD, f"{path}/weight", "weight must be a number")
            continue
        weight = float(weight)
        if not math.isfinite(weight) or weight <= 0:
            report.error(E_INVALID_WEIGHT, f"{path}/weight", "edge weights must be finite and > 0 (absence means no edge)")
            continue

        per_link = item.get("directed")
        if per_link is not None and not isinstance(per_link, bool):
            report.error(E_MALFORMED_FIELD, f"{path}/directed", "per-link directed must be a boolean")
            per_link = None

        for key in item:
            if key in EDGE_FIELDS or key in ("weight", "directed"):
                continue
            if key not in warned_fields:
                warned_fields.add(key)
                report.warn(W_UNKNOWN_EDGE_FIELD, f"{path}/{key}", f"unknown edge field {key!r} ignored")

        classification, _ = classify_edge(
            endpoints["layer_from"], endpoints["node_from"], endpoints["layer_to"], endpoints["node_to"]
        )
        edges.append(
            _RawEdge(
                index=i,
                layer_from=endpoints["layer_from"],
                node_from=endpoints["node_from"],
                layer_to=endpoints["layer_to"],
                node_to=endpoints["node_to"],
                weight=weight,
                directed=per_link,
                classification=classification,
            )
        )
    return edges


def _check_edge_references(
    edges: list[_RawEdge], state: dict[tuple[str, str], StateNode], report: ValidationReport
) -> list[_RawEdge]:
    kept = []
    for e in edges:
        ok = True
        for role, key in (("source", (e.layer_from, e.node_from)), ("target", (e.layer_to, e.node_to))):
            if key not in state:
                report.error(
                    E_UNKNOWN_REFERENCE,
                    f"/extended/{e.index}",
                    f"edge {role} ({key[0]!r}, {key[1]!r}) is not a state node",
                )
                ok = False
        if ok:
            kept.append(e)
    return kept


def _check_duplicates(edges: list[_RawEdge], directed: bool, directed_interlayer: bool, report: ValidationReport) -> None:
    seen: dict[object, int] = {}
    for e in edges:
        if e.classification == INTRALAYER:
            key: object = (e.layer_from, intra_edge_key(e.node_from, e.node_to, directed))
        else:
            key = inter_edge_key((e.layer_from, e.node_from), (e.layer_to, e.node_to), directed_interlayer)
        first = seen.get(key)
        if first is None:
            seen[key] = e.index
        else:
            report.error(
                E_DUPLICATE_EDGE,
                f"/extended/{e.index}",
                f"edge duplicates /extended/{first} under its canonical key "
                f"({e.layer_from!r},{e.node_from!r})->({e.layer_to!r},{e.node_to!r})",
            )


def _check_bipartite(
    layers: dict[str, LayerDef],
    nodes: dict[str, PhysicalNode],
    state: dict[tuple[str, str], StateNode],
    edges: list[_RawEdge],
    state_index: dict[tuple[str, str], int],
    report: ValidationReport,
) -> None:
    for layer_id, layer in layers.items():
        if not layer.bipartite:
            continue
        labels: set[str] = set()
        for key, s in state.items():
            if key[0] != layer_id:
                continue
            node_type = nodes[s.node_id].node_type
            if not node_type:
                report.error(
                    E_BIPARTITE_NODE_TYPE,
                    f"/state_nodes/{state_index[key]}",
                    f"node {s.node_id!r} appears in bipartite layer {layer_id!r} but has no node_type",
                )
            else:
                labels.add(node_type)
        if len(labels) > 2:
            report.error(
                E_BIPARTITE_ARITY,
                f"/layers/{list(layers).index(layer_id)}",
                f"bipartite layer {layer_id!r} mixes {len(labels)} node_type values: {sorted(labels)}",
            )
    for e in edges:
        if e.classification != INTRALAYER:
            continue
        layer = layers.get(e.layer_from)
        if layer is None or not layer.bipartite or e.node_from == e.node_to:
            continue
        t_from = nodes[e.node_from].node_type if e.node_from in nodes else None
        t_to = nodes[e.node_to].node_type if e.node_to in nodes else None
        if t_from and t_from == t_to:
            report.warn(
                W_BIPARTITE_SAME_SET,
                f"/extended/{e.index}",
                f"intralayer edge joins two {t_from!r} nodes inside bipartite layer {e.layer_from!r}",
            )


def validate_document(doc: Any) -> tuple[NetworkSnapshot | None, ValidationReport]:
    """Validate a decoded document and build a snapshot when it is clean."""
    report = ValidationReport()
    if not isinstance(doc, dict):
        report.error(E_MALFORMED_DOCUMENT, "/", "top-level value must be a JSON object")
        return None, report

    arrays: dict[str, list] = {}
    for name in REQUIRED_ARRAYS:
        value = doc.get(name)
        if value is None:
            report.error(E_MISSING_ARRAY, f"/{name}", f"required array {name!r} is missing")
        elif not isinstance(value, list):
            report.error(E_MALFORMED_FIELD, f"/{name}", f"{name} must be an array")
        else:
            arrays[name] = value
    if len(arrays) != len(REQUIRED_ARRAYS):
        return None, report

    explicit_directed = _read_flag(doc, "directed", report)
    explicit_directed_interlayer = _read_flag(doc, "directed_interlayer", report)

    if not arrays["layers"]:
        report.error(E_EMPTY_LAYERS, "/layers", "a network needs at least one layer")

    layers = _parse_layers(arrays["layers"], report)
    nodes = _parse_nodes(arrays["nodes"], report)
    state, state_positions = _parse_state_nodes(arrays["state_nodes"], layers, nodes, report)
    edges = _parse_edges(arrays["extended"], report)

    directed, directed_interlayer, inferred_from, overridden = normalize_directedness(
        explicit_directed,
        explicit_directed_interlayer,
        [e.directed for e in edges if e.classification == INTRALAYER],
        [e.directed for e in edges if e.classification != INTRALAYER],
    )
    report.directed = directed
    report.directed_interlayer = directed_interlayer
    report.inferred_from = inferred_from
    if overridden:
        report.warn(
            W_FLAG_CONTRADICTION,
            "/directed_interlayer",
            "directed=true forces directed_interlayer=true, overriding the explicit false",
        )

    edges = _check_edge_references(edges, state, report)
    _check_duplicates(edges, directed, directed_interlayer, report)
    _check_bipartite(layers, nodes, state, edges, state_positions, report)

    if not report.ok:
        return None, report

    snapshot = NetworkSnapshot(
        layers=layers.values(),
        nodes=nodes.values(),
        state_nodes=state.values(),
        extended=[
            ExtendedEdge(
                layer_from=e.layer_from,
                node_from=e.node_from,
                layer_to=e.layer_to,
                node_to=e.node_to,
                weight=e.weight,
                per_link_directed=e.directed,
            )
            for e in edges
        ],
        directed=directed,
        directed_interlayer=directed_interlayer,
    )
    return snapshot, report


def parse_json(data: bytes | str | dict) -> tuple[NetworkSnapshot | None, ValidationReport]:
    """Parse a JSON document into a validated snapshot.

    Accepts raw bytes, text, or an already-decoded object.  Never raises
    on bad input; problems land in the report.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            report = ValidationReport()
            report.error(E_INVALID_JSON, "/", f"input is not valid UTF-8: {exc}")
            return None, report
    if isinstance(data, str):
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            report = ValidationReport()
            report.error(E_INVALID_JSON, "/", f"input is not valid JSON: {exc}")
            return None, report
    else:
        doc = data
    return validate_document(doc)


def stable_dumps(obj: Any) -> bytes:
    """Deterministic JSON bytes: sorted keys, two-space indent, trailing
    newline.  Every serialized artifact (documents, reports, statistics)
    goes through this one formatter so CLI and HTTP output stay
    byte-identical."""
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode("utf-8")


def serialize_json(snapshot: NetworkSnapshot) -> bytes:
    """Emit the canonical four-array form of a snapshot.

    The output is deterministic: layers keep their canonical order, the
    remaining arrays are sorted, undirected edges are written with their
    endpoints in canonical orientation, and object keys are sorted.
    Re-parsing the bytes yields a snapshot equivalent to the input.
    """
    return stable_dumps(document_dict(snapshot))


def document_dict(snapshot: NetworkSnapshot) -> dict[str, Any]:
    """The canonical four-array document as a plain dict."""
    layers = []
    for layer in snapshot.layers:
        item: dict[str, Any] = {
            "layer_id": layer.layer_id,
            "display_name": layer.display_name,
            "bipartite": layer.bipartite,
        }
        if layer.has_coordinates:
            item["latitude"] = layer.latitude
            item["longitude"] = layer.longitude
        item.update(layer.extra_attributes)
        layers.append(item)

    nodes = []
    for node in sorted(snapshot.nodes, key=lambda n: n.node_id):
        item = {"node_id": node.node_id}
        if node.node_type is not None:
            item["node_type"] = node.node_type
        item.update(node.extra_attributes)
        nodes.append(item)

    state_nodes = []
    for s in sorted(snapshot.state_nodes, key=lambda s: (snapshot.layer_index[s.layer_id], s.node_id)):
        item = {"layer_id": s.layer_id, "node_id": s.node_id}
        item.update(s.per_layer_attributes)
        state_nodes.append(item)

    extended = []
    for e in snapshot.extended:
        # undirected endpoints already sit in canonical orientation
        item = {
            "layer_from": e.layer_from,
            "node_from": e.node_from,
            "layer_to": e.layer_to,
            "node_to": e.node_to,
            "weight": e.weight,
        }
        if e.per_link_directed is not None:
            item["directed"] = e.per_link_directed
        extended.append(item)
    extended.sort(
        key=lambda d: (
            snapshot.layer_index[d["layer_from"]],
            snapshot.layer_index[d["layer_to"]],
            d["node_from"],
            d["node_to"],
        )
    )

    return {
        "directed": snapshot.directed,
        "directed_interlayer": snapshot.directed_interlayer,
        "layers": layers,
        "nodes": nodes,
        "state_nodes": state_nodes,
        "extended": extended,
    }


# -- CSV ----------------------------------------------------------------


def _decode_table(data: bytes | str) -> str:
    if isinstance(data, (bytes, bytearray)):
        return data.decode("utf-8")
    return data


def _read_rows(data: bytes | str) -> tuple[list[str], list[list[str]]]:
    rows = list(csv.reader(io.StringIO(_decode_table(data))))
    if not rows:
        return [], []
    return rows[0], rows[1:]


def _cell(row: list[str], col: dict[str, int], name: str) -> str:
    idx = col.get(name, -1)
    if idx < 0 or idx >= len(row):
        return ""
    return row[idx].strip()


def _csv_bool(text: str) -> bool | str | None:
    if text == "":
        return None
    if text.lower() == "true":
        return True
    if text.lower() == "false":
        return False
    return text  # left as-is so the document validator reports the type


def _csv_attr(text: str) -> float | str:
    try:
        value = float(text)
        if math.isfinite(value):
            return value
    except ValueError:
        pass
    return text


def parse_csv(
    edges: bytes | str,
    layers: bytes | str | None = None,
    nodes: bytes | str | None = None,
    state_nodes: bytes | str | None = None,
) -> tuple[NetworkSnapshot | None, ValidationReport]:
    """Assemble CSV tables into a document and validate it.

    Only the edges table is mandatory.  Absent auxiliary tables are
    synthesized from edge endpoints in first-appearance order, so an
    edges-only upload yields the same snapshot as the equivalent JSON.
    """
    report = ValidationReport()
    header, rows = _read_rows(edges)
    col = {name.strip(): i for i, name in enumerate(header)}
    missing = [name for name in EDGE_FIELDS if name not in col]
    for name in missing:
        report.error(E_MISSING_COLUMN, f"edges:{name}", f"edges table is missing required column {name!r}")
    if missing:
        return None, report
    if not rows and layers is None and state_nodes is None:
        report.error(E_EMPTY_EDGES, "edges", "edges table has no rows and no auxiliary tables were given")
        return None, report

    for extra in col:
        if extra not in EDGE_FIELDS and extra not in ("weight", "directed"):
            report.warn(W_UNKNOWN_EDGE_FIELD, f"edges:{extra}", f"unknown edges column {extra!r} ignored")

    edge_items: list[dict[str, Any]] = []
    for r, row in enumerate(rows):
        item: dict[str, Any] = {name: _cell(row, col, name) for name in EDGE_FIELDS}
        weight_text = _cell(row, col, "weight")
        if weight_text:
            try:
                item["weight"] = float(weight_text)
            except ValueError:
                report.error(E_NON_NUMERIC_WEIGHT, f"edges:{r}:weight", f"weight {weight_text!r} is not a number")
                continue
        directed_text = _csv_bool(_cell(row, col, "directed"))
        if directed_text is not None:
            item["directed"] = directed_text
        edge_items.append(item)

    def table_items(data: bytes | str | None, table: str, id_fields: tuple[str, ...], special: dict) -> list[dict] | None:
        if data is None:
            return None
        t_header, t_rows = _read_rows(data)
        t_col = {name.strip(): i for i, name in enumerate(t_header)}
        for name in id_fields:
            if name not in t_col:
                report.error(E_MISSING_COLUMN, f"{table}:{name}", f"{table} table is missing required column {name!r}")
        if any(name not in t_col for name in id_fields):
            return []
        items = []
        for row in t_rows:
            item: dict[str, Any] = {}
            for name in t_col:
                text = _cell(row, t_col, name)
                if name in id_fields:
                    item[name] = text
                elif text == "":
                    continue
                elif name in special:
                    item[name] = special[name](text)
                else:
                    item[name] = _csv_attr(text)
            items.append(item)
        return items

    layer_items = table_items(
        layers, "layers", ("layer_id",), {"bipartite": _csv_bool, "latitude": _csv_attr, "longitude": _csv_attr, "display_name": str}
    )
    node_items = table_items(nodes, "nodes", ("node_id",), {"node_type": str})
    state_items = table_items(state_nodes, "state_nodes", ("layer_id", "node_id"), {})
    if not report.ok:
        return None, report

    if layer_items is None:
        seen_layers: dict[str, None] = {}
        for item in edge_items:
            seen_layers.setdefault(item["layer_from"], None)
            seen_layers.setdefault(item["layer_to"], None)
        layer_items = [{"layer_id": lid} for lid in seen_layers]
    if node_items is None:
        seen_nodes: dict[str, None] = {}
        for item in edge_items:
            seen_nodes.setdefault(item["node_from"], None)
            seen_nodes.setdefault(item["node_to"], None)
        node_items = [{"node_id": nid} for nid in seen_nodes]
    if state_items is None:
        seen_state: dict[tuple[str, str], None] = {}
        for item in edge_items:
            seen_state.setdefault((item["layer_from"], item["node_from"]), None)
            seen_state.setdefault((item["layer_to"], item["node_to"]), None)
        state_items = [{"layer_id": lid, "node_id": nid} for lid, nid in seen_state]

    doc = {
        "layers": layer_items,
        "nodes": node_items,
        "state_nodes": state_items,
        "extended": edge_items,
    }
    snapshot, doc_report = validate_document(doc)
    doc_report.warnings = report.warnings + doc_report.warnings
    return snapshot, doc_report
