"""Deterministic coordinate computation for every visualization mode.

Within-layer positions come from a seeded force simulation (or closed
forms for bipartite and degenerate layers), the stacked view applies a
fixed oblique affine per layer, the layer-bubble view runs a force
simulation over layers themselves or pins them to map coordinates, and
grid mode partitions a viewport.  Every function is a pure function of
(snapshot, seed, params): repeated calls are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .model import EngineError, NetworkSnapshot

ITERATIONS = 300
INITIAL_TEMPERATURE = 0.1
# fraction of the unit square the normalized point cloud spans
FIT_SPAN = 0.9
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
JITTER_RADIUS = 0.02
MERCATOR_LATITUDE_LIMIT = 85.051129

KIND_FORCE = "force"
KIND_BIPARTITE = "bipartite_columns"
KIND_CIRCULAR = "circular"


class MissingCoordinatesError(EngineError):
    """Geographic layout requested while some layers lack coordinates."""

    def __init__(self, layer_ids: Sequence[str]):
        self.layer_ids = tuple(layer_ids)
        super().__init__(f"layers without coordinates: {', '.join(self.layer_ids)}")


def _force_layout(
    node_ids: Sequence[str],
    pair_weights: dict[tuple[str, str], float],
    seed_key: Sequence[int],
) -> dict[str, tuple[float, float]]:
    """Seeded spring-electrical placement, normalized into the unit square.

    Repulsion acts between all pairs, attraction along weighted pairs;
    fixed iteration count with linear cooling, then a uniform rescale so
    relative distances survive.
    """
    n = len(node_ids)
    if n == 0:
        return {}
    if n == 1:
        return {node_ids[0]: (0.5, 0.5)}

    rng = np.random.default_rng(list(seed_key))
    pos = rng.random((n, 2))
    index = {nid: i for i, nid in enumerate(node_ids)}
    weights = np.zeros((n, n))
    for (u, v), w in pair_weights.items():
        i, j = index[u], index[v]
        if i == j:
            continue
        weights[i, j] += w
        weights[j, i] += w
    top = weights.max()
    if top > 0:
        weights = weights / top

    k = math.sqrt(1.0 / n)
    temperature = INITIAL_TEMPERATURE
    cooling = temperature / (ITERATIONS + 1)
    eps = 1e-9
    for _ in range(ITERATIONS):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((delta**2).sum(axis=2))
        np.fill_diagonal(dist, 1.0)
        dist = np.maximum(dist, eps)
        coef = (k * k) / (dist**2) - weights * dist / k
        disp = (delta * coef[:, :, None]).sum(axis=1)
        length = np.maximum(np.sqrt((disp**2).sum(axis=1)), eps)
        pos = pos + disp * (np.minimum(length, temperature) / length)[:, None]
        temperature -= cooling

    mins = pos.min(axis=0)
    spans = pos.max(axis=0) - mins
    widest = float(spans.max())
    if widest <= 1e-12:
        pos = np.full_like(pos, 0.5)
    else:
        center = mins + spans / 2
        pos = (pos - center) * (FIT_SPAN / widest) + 0.5
    return {nid: (float(pos[i, 0]), float(pos[i, 1])) for nid, i in index.items()}


@dataclass(frozen=True)
class LayerLocalLayout:
    """Node positions on one unit layer plane."""

    scope: str  # a layer_id, or "union" for the shared cross-layer layout
    layout_kind: str
    positions: dict[str, tuple[float, float]]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "scope": self.scope,
            "layout_kind": self.layout_kind,
            "positions": {nid: [x, y] for nid, (x, y) in sorted(self.positions.items())},
        }


def _bipartite_columns(sets: dict[str, Iterable[str]]) -> dict[str, tuple[float, float]]:
    # first label (alphabetically) forms the left column
    positions: dict[str, tuple[float, float]] = {}
    for column, label in zip((0.15, 0.85), sorted(sets)):
        members = sorted(sets[label])
        for i, nid in enumerate(members):
            positions[nid] = (column, (i + 1) / (len(members) + 1))
    return positions


def _circular(node_ids: Sequence[str]) -> dict[str, tuple[float, float]]:
    n = len(node_ids)
    if n == 1:
        return {node_ids[0]: (0.5, 0.5)}
    return {
        nid: (0.5 + 0.4 * math.cos(2 * math.pi * i / n), 0.5 + 0.4 * math.sin(2 * math.pi * i / n))
        for i, nid in enumerate(node_ids)
    }


def _symmetrized_pairs(edges: Iterable[tuple[tuple[str, str], float]]) -> dict[tuple[str, str], float]:
    pairs: dict[tuple[str, str], float] = {}
    for (u, v), w in edges:
        if u == v:
            continue  # self-loops exert no layout force
        key = (u, v) if u <= v else (v, u)
        pairs[key] = pairs.get(key, 0.0) + w
    # canonical order: positions must not depend on input edge order
    return dict(sorted(pairs.items()))


def layout_layer(snapshot: NetworkSnapshot, layer_id: str, seed: int = 0, kind: str | None = None) -> LayerLocalLayout:
    """Position the state nodes of one layer on its unit plane."""
    layer = snapshot.require_layer(layer_id)
    nodes = sorted(snapshot.presence(layer_id))
    if kind is None:
        kind = KIND_BIPARTITE if layer.bipartite else KIND_FORCE
    if kind == KIND_BIPARTITE:
        positions = _bipartite_columns(snapshot.bipartite_sets(layer_id) or {"": nodes})
    elif kind == KIND_CIRCULAR:
        positions = _circular(nodes)
    elif kind == KIND_FORCE:
        pairs = _symmetrized_pairs((pair, e.weight) for pair, e in snapshot.intra_edges(layer_id).items())
        positions = _force_layout(nodes, pairs, [seed, 1, snapshot.layer_index[layer_id]])
    else:
        raise ValueError(f"unknown layout kind {kind!r}")
    return LayerLocalLayout(scope=layer_id, layout_kind=kind, positions=positions)


def layout_union(snapshot: NetworkSnapshot, seed: int = 0) -> LayerLocalLayout:
    """One shared placement of every present physical node.

    Computed on the union of all within-layer edges so a node keeps the
    same plane coordinates in every layer; the stacked and grid displays
    both reuse it, which is what aligns replicas across panels.
    """
    nodes = sorted({nid for _, nid in snapshot.state_by_key})
    if snapshot.layers and all(l.bipartite for l in snapshot.layers):
        sets: dict[str, list[str]] = {}
        for nid in nodes:
            label = snapshot.node_by_id[nid].node_type or ""
            sets.setdefault(label, []).append(nid)
        if len(sets) <= 2:
            return LayerLocalLayout(scope="union", layout_kind=KIND_BIPARTITE, positions=_bipartite_columns(sets))
    pairs = _symmetrized_pairs(
        (pair, e.weight)
        for lid in snapshot.layer_ids
        for pair, e in snapshot.intra_edges(lid).items()
    )
    return LayerLocalLayout(scope="union", layout_kind=KIND_FORCE, positions=_force_layout(nodes, pairs, [seed, 2]))


@dataclass(frozen=True)
class StackParams:
    """Oblique projection controls for the stacked view."""

    scale: float = 1.0
    compression: float = 0.5
    layer_gap: float = 1.0
    shear_x: float | None = None
    shear_y: float | None = None

    def effective_shear(self) -> tuple[float, float]:
        sx = 0.35 * self.scale * self.layer_gap if self.shear_x is None else self.shear_x
        sy = -0.55 * self.scale * self.layer_gap if self.shear_y is None else self.shear_y
        return sx, sy

    def to_json_dict(self) -> dict[str, Any]:
        sx, sy = self.effective_shear()
        return {
            "scale": self.scale,
            "compression": self.compression,
            "layer_gap": self.layer_gap,
            "shear_x": sx,
            "shear_y": sy,
        }


@dataclass(frozen=True)
class StackProjection:
    params: StackParams
    layer_ids: tuple[str, ...]
    # (layer_id, node_id) -> screen position
    positions: dict[tuple[str, str], tuple[float, float]]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "params": self.params.to_json_dict(),
            "layers": [{"layer_id": lid, "index": i} for i, lid in enumerate(self.layer_ids)],
            "positions": [
                {"layer_id": lid, "node_id": nid, "x": x, "y": y}
                for (lid, nid), (x, y) in sorted(self.positions.items(), key=lambda kv: (self.layer_ids.index(kv[0][0]), kv[0][1]))
            ],
        }


def project_stack(layouts: Sequence[LayerLocalLayout], params: StackParams = StackParams()) -> StackProjection:
    """Apply the per-layer oblique affine to a list of layer planes.

    Layer index comes from list order (canonical layer order); a node at
    plane (x, y) on layer i lands at (x*S + i*shear_x, y*S*c + i*shear_y).
    """
    shear_x, shear_y = params.effective_shear()
    s = params.scale
    c = params.compression
    positions: dict[tuple[str, str], tuple[float, float]] = {}
    for i, layout in enumerate(layouts):
        for nid, (x, y) in layout.positions.items():
            positions[(layout.scope, nid)] = (x * s + i * shear_x, y * s * c + i * shear_y)
    return StackProjection(params=params, layer_ids=tuple(l.scope for l in layouts), positions=positions)


def stack_planes(snapshot: NetworkSnapshot, union: LayerLocalLayout) -> list[LayerLocalLayout]:
    """Restrict the shared union layout to each layer's present nodes."""
    return [
        LayerLocalLayout(
            scope=lid,
            layout_kind=union.layout_kind,
            positions={nid: union.positions[nid] for nid in snapshot.presence(lid)},
        )
        for lid in snapshot.layer_ids
    ]


def stack_for_snapshot(snapshot: NetworkSnapshot, seed: int = 0, params: StackParams = StackParams()) -> StackProjection:
    """Stacked view of the whole snapshot from the shared union layout."""
    return project_stack(stack_planes(snapshot, layout_union(snapshot, seed)), params)


@dataclass(frozen=True)
class LayerGraphLayout:
    """Positions for the layer-bubble view, plus the pair statistics that
    drive (or annotate) the arrangement."""

    mode: str  # "force" or "geographic"
    positions: dict[str, tuple[float, float]]
    edges: tuple[dict[str, Any], ...]
    jitter_radius: float | None = None

    def to_json_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "mode": self.mode,
            "positions": {lid: [x, y] for lid, (x, y) in sorted(self.positions.items())},
            "edges": list(self.edges),
        }
        if self.jitter_radius is not None:
            out["jitter_radius"] = self.jitter_radius
        return out


def layer_pair_stats(snapshot: NetworkSnapshot) -> list[dict[str, Any]]:
    """Shared-node count and total coupling weight per layer pair."""
    ids = snapshot.layer_ids
    coupling: dict[tuple[str, str], float] = {}
    for e in snapshot.interlayer_edges():
        a, b = e.layer_from, e.layer_to
        if snapshot.layer_index[a] > snapshot.layer_index[b]:
            a, b = b, a
        coupling[(a, b)] = coupling.get((a, b), 0.0) + e.weight
    stats = []
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            shared = len(snapshot.presence_set(a) & snapshot.presence_set(b))
            weight = coupling.get((a, b), 0.0)
            if shared or weight:
                stats.append(
                    {"layer_a": a, "layer_b": b, "shared_node_count": shared, "coupling_weight": weight}
                )
    return stats


def layout_layer_graph(
    snapshot: NetworkSnapshot,
    seed: int = 0,
    weights: tuple[float, float] = (1.0, 1.0),
    normalize_shared: bool = False,
) -> LayerGraphLayout:
    """Force arrangement of layer bubbles.

    Attraction between two layers grows with w_shared * shared-node
    count (or node-overlap fraction when normalize_shared is set) plus
    w_coupling * total cross-layer link weight, so strongly related
    layers settle close together.
    """
    w_shared, w_coupling = weights
    stats = layer_pair_stats(snapshot)
    pair_weights: dict[tuple[str, str], float] = {}
    for row in stats:
        a, b = row["layer_a"], row["layer_b"]
        shared: float = row["shared_node_count"]
        if normalize_shared:
            union = len(snapshot.presence_set(a) | snapshot.presence_set(b))
            shared = shared / union if union else 0.0
        pair_weights[(a, b)] = w_shared * shared + w_coupling * row["coupling_weight"]
    positions = _force_layout(list(snapshot.layer_ids), pair_weights, [seed, 3])
    return LayerGraphLayout(mode="force", positions=positions, edges=tuple(stats))


def _mercator(latitude: float, longitude: float) -> tuple[float, float]:
    lat = max(-MERCATOR_LATITUDE_LIMIT, min(MERCATOR_LATITUDE_LIMIT, latitude))
    x = (longitude + 180.0) / 360.0
    y = 0.5 - math.log(math.tan(math.pi / 4 + math.radians(lat) / 2)) / (2 * math.pi)
    return x, y


def layout_geographic(snapshot: NetworkSnapshot) -> LayerGraphLayout:
    """Pin layer bubbles to their map positions.

    Coordinates go through the spherical-Mercator map, then a uniform
    fit that leaves a 10% margin around the bounding box.  Layers that
    share exact coordinates fan out on a fixed-radius golden-angle
    wheel so every bubble stays selectable.
    """
    missing = [l.layer_id for l in snapshot.layers if not l.has_coordinates]
    if missing:
        raise MissingCoordinatesError(missing)

    projected = {l.layer_id: _mercator(l.latitude, l.longitude) for l in snapshot.layers}  # type: ignore[arg-type]
    xs = [p[0] for p in projected.values()]
    ys = [p[1] for p in projected.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys))
    if span <= 1e-12:
        positions = {lid: (0.5, 0.5) for lid in projected}
    else:
        scale = (1.0 - 2 * 0.1) / span
        cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
        positions = {lid: (0.5 + (x - cx) * scale, 0.5 + (y - cy) * scale) for lid, (x, y) in projected.items()}

    groups: dict[tuple[float, float], list[str]] = {}
    for layer in snapshot.layers:
        groups.setdefault((layer.latitude, layer.longitude), []).append(layer.layer_id)  # type: ignore[arg-type]
    for members in groups.values():
        if len(members) < 2:
            continue
        for rank, lid in enumerate(members):
            angle = rank * GOLDEN_ANGLE
            x, y = positions[lid]
            positions[lid] = (x + JITTER_RADIUS * math.cos(angle), y + JITTER_RADIUS * math.sin(angle))

    return LayerGraphLayout(
        mode="geographic",
        positions=positions,
        edges=tuple(layer_pair_stats(snapshot)),
        jitter_radius=JITTER_RADIUS,
    )


def layout_grid(layer_count: int, viewport: tuple[float, float] = (1.0, 1.0)) -> list[tuple[float, float, float, float]]:
    """Equal cells for the per-layer panel grid, row-major.

    Column count is ceil(sqrt(L)); rows are the minimum that fits.
    """
    if layer_count < 0:
        raise ValueError("layer_count must be >= 0")
    if layer_count == 0:
        return []
    width, height = viewport
    columns = math.isqrt(layer_count)
    if columns * columns < layer_count:
        columns += 1
    rows = (layer_count + columns - 1) // columns
    cell_w = width / columns
    cell_h = height / rows
    return [
        ((i % columns) * cell_w, (i // columns) * cell_h, cell_w, cell_h)
        for i in range(layer_count)
    ]
