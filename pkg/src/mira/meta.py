"""Layer-aggregated projection of a multilayer network.

Collapses all within-layer edges onto a single graph over the physical
nodes.  Three aggregation rules share one canonical edge-key set and
differ only in the weight attached to each surviving key: flat union,
per-layer occurrence count, or weight sum.  Cross-layer links never
enter the projection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .model import (
    INTRALAYER,
    ExtendedEdge,
    NetworkSnapshot,
    UnknownNodeError,
    intra_edge_key,
)

MODE_UNION = "union"
MODE_SUM_OCCURRENCE = "sum_occurrence"
MODE_SUM_WEIGHTS = "sum_weights"
MODES = (MODE_UNION, MODE_SUM_OCCURRENCE, MODE_SUM_WEIGHTS)

# short aliases used on the wire (CLI flag and query parameter)
WIRE_MODES = {"union": MODE_UNION, "count": MODE_SUM_OCCURRENCE, "sum": MODE_SUM_WEIGHTS}


@dataclass(frozen=True)
class CanonicalEdgeKey:
    """Identity of a projected edge.

    Undirected keys store their endpoints sorted so (u,v) and (v,u)
    collide; directed keys preserve the input order.
    """

    node_u: str
    node_v: str
    ordered: bool

    @property
    def pair(self) -> tuple[str, str]:
        return (self.node_u, self.node_v)

    @property
    def is_self_loop(self) -> bool:
        return self.node_u == self.node_v


def canonicalize(edge: ExtendedEdge, directed: bool) -> CanonicalEdgeKey:
    """Canonical key of a within-layer edge."""
    if edge.classification != INTRALAYER:
        raise ValueError("only intralayer edges participate in the projection")
    u, v = intra_edge_key(edge.node_from, edge.node_to, directed)
    return CanonicalEdgeKey(node_u=u, node_v=v, ordered=directed)


@dataclass(frozen=True)
class MetaEdge:
    key: CanonicalEdgeKey
    weight: float
    # (layer_id, within-layer weight) per contributing layer, canonical layer order
    layers: tuple[tuple[str, float], ...]


@dataclass
class MetaNetwork:
    mode: str
    directed: bool
    node_ids: tuple[str, ...]
    edges: dict[tuple[str, str], MetaEdge]
    _out: dict[str, dict[str, float]] = field(repr=False, default_factory=dict)
    _in: dict[str, dict[str, float]] = field(repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        self._node_set = frozenset(self.node_ids)

    def to_json_dict(self) -> dict[str, Any]:
        nodes = []
        for v in self.node_ids:
            entry: dict[str, Any] = {"node_id": v}
            if self.directed:
                entry["k_meta_out"] = meta_degree(self, v, "out")
                entry["k_meta_in"] = meta_degree(self, v, "in")
                entry["s_meta_out"] = meta_strength(self, v, "out")
                entry["s_meta_in"] = meta_strength(self, v, "in")
            else:
                entry["k_meta"] = meta_degree(self, v)
                entry["s_meta"] = meta_strength(self, v)
            nodes.append(entry)
        edges = [
            {
                "node_from": e.key.node_u,
                "node_to": e.key.node_v,
                "weight": e.weight,
                "layers": [{"layer_id": lid, "weight": w} for lid, w in e.layers],
            }
            for _, e in sorted(self.edges.items())
        ]
        return {"mode": self.mode, "directed": self.directed, "nodes": nodes, "edges": edges}


def build_meta(snapshot: NetworkSnapshot, mode: str = MODE_UNION) -> MetaNetwork:
    """Project the snapshot's within-layer edges onto one graph.

    The projected node set is every physical node holding at least one
    state node, isolated or not.  Self-loops survive as self-loop
    meta-edges but stay out of the per-node degree and strength.
    """
    mode = WIRE_MODES.get(mode, mode)
    if mode not in MODES:
        raise ValueError(f"unknown aggregation mode {mode!r}")

    provenance: dict[tuple[str, str], list[tuple[str, float]]] = {}
    for lid in snapshot.layer_ids:
        layer_edges = snapshot.intra_edges(lid)
        for pair in sorted(layer_edges):
            provenance.setdefault(pair, []).append((lid, layer_edges[pair].weight))

    edges: dict[tuple[str, str], MetaEdge] = {}
    out: dict[str, dict[str, float]] = {}
    incoming: dict[str, dict[str, float]] = {}
    for pair in sorted(provenance):
        contributions = provenance[pair]
        if mode == MODE_UNION:
            weight = 1.0
        elif mode == MODE_SUM_OCCURRENCE:
            weight = float(len(contributions))
        else:
            weight = float(sum(w for _, w in contributions))
        key = CanonicalEdgeKey(node_u=pair[0], node_v=pair[1], ordered=snapshot.directed)
        edges[pair] = MetaEdge(key=key, weight=weight, layers=tuple(contributions))
        if not key.is_self_loop:
            out.setdefault(pair[0], {})[pair[1]] = weight
            if snapshot.directed:
                incoming.setdefault(pair[1], {})[pair[0]] = weight
            else:
                out.setdefault(pair[1], {})[pair[0]] = weight

    node_ids = tuple(sorted({nid for _, nid in snapshot.state_by_key}))
    return MetaNetwork(
        mode=mode,
        directed=snapshot.directed,
        node_ids=node_ids,
        edges=edges,
        _out=out,
        _in=incoming if snapshot.directed else out,
    )


def _neighbor_map(meta: MetaNetwork, node_id: str, direction: str) -> dict[str, float]:
    if node_id not in meta._node_set:
        raise UnknownNodeError(f"unknown node {node_id!r}")
    if direction not in ("undirected", "in", "out"):
        raise ValueError(f"direction must be 'undirected', 'in' or 'out', got {direction!r}")
    adj = meta._in if direction == "in" else meta._out
    return adj.get(node_id, {})


def meta_degree(meta: MetaNetwork, node_id: str, direction: str = "undirected") -> int:
    """Distinct projected neighbors, regardless of how many layers back them."""
    return len(_neighbor_map(meta, node_id, direction))


def meta_strength(meta: MetaNetwork, node_id: str, direction: str = "undirected") -> float:
    return float(sum(_neighbor_map(meta, node_id, direction).values()))
