"""In-memory multilayer network model.

A network is described by five components: layers, physical nodes, state
nodes (the realization of a physical node inside one layer), intralayer
links, and interlayer links.  Both link classes live in a single extended
edge list and are told apart by comparing their endpoint layers.  The
:class:`NetworkSnapshot` built from these pieces is immutable and
pre-indexes everything the metric, projection, and layout code needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

AttrValue = float | str

INTRALAYER = "intralayer"
INTERLAYER = "interlayer"
REPLICA = "replica"
GENERAL = "general"


class EngineError(Exception):
    """Base class for engine-level errors."""


class UnknownLayerError(EngineError):
    pass


class UnknownNodeError(EngineError):
    pass


class UnknownStateNodeError(EngineError):
    pass


class DirectionMismatchError(EngineError):
    """A directed degree/strength variant was requested for an undirected
    edge class, or vice versa."""


def classify_edge(layer_from: str, node_from: str, layer_to: str, node_to: str) -> tuple[str, str | None]:
    """Classify an edge record as intralayer or interlayer.

    Returns ``(classification, coupling_kind)``; the coupling kind is
    ``"replica"`` when an interlayer edge connects a node to itself in
    another layer, ``"general"`` for any other interlayer edge, and
    ``None`` for intralayer edges.
    """
    if layer_from == layer_to:
        return INTRALAYER, None
    return INTERLAYER, (REPLICA if node_from == node_to else GENERAL)


@dataclass(frozen=True)
class LayerDef:
    layer_id: str
    display_name: str
    latitude: float | None = None
    longitude: float | None = None
    bipartite: bool = False
    extra_attributes: Mapping[str, AttrValue] = field(default_factory=dict)

    @property
    def has_coordinates(self) -> bool:
        return self.latitude is not None and self.longitude is not None


@dataclass(frozen=True)
class PhysicalNode:
    node_id: str
    node_type: str | None = None
    extra_attributes: Mapping[str, AttrValue] = field(default_factory=dict)


@dataclass(frozen=True)
class StateNode:
    layer_id: str
    node_id: str
    per_layer_attributes: Mapping[str, AttrValue] = field(default_factory=dict)

    @property
    def key(self) -> tuple[str, str]:
        return (self.layer_id, self.node_id)


@dataclass(frozen=True)
class ExtendedEdge:
    layer_from: str
    node_from: str
    layer_to: str
    node_to: str
    weight: float = 1.0
    per_link_directed: bool | None = None

    @property
    def classification(self) -> str:
        return INTRALAYER if self.layer_from == self.layer_to else INTERLAYER

    @property
    def coupling_kind(self) -> str | None:
        return classify_edge(self.layer_from, self.node_from, self.layer_to, self.node_to)[1]

    @property
    def is_self_loop(self) -> bool:
        return self.layer_from == self.layer_to and self.node_from == self.node_to

    @property
    def source(self) -> tuple[str, str]:
        return (self.layer_from, self.node_from)

    @property
    def target(self) -> tuple[str, str]:
        return (self.layer_to, self.node_to)

    def endpoints_key(self) -> tuple[str, str, str, str]:
        return (self.layer_from, self.node_from, self.layer_to, self.node_to)


def intra_edge_key(node_from: str, node_to: str, directed: bool) -> tuple[str, str]:
    """Within-layer deduplication key: ordered pair when directed, sorted
    pair otherwise so (u, v) and (v, u) collide."""
    if directed or node_from <= node_to:
        return (node_from, node_to)
    return (node_to, node_from)


def inter_edge_key(
    source: tuple[str, str], target: tuple[str, str], directed: bool
) -> tuple[tuple[str, str], tuple[str, str]]:
    """Cross-layer deduplication key over (layer, node) endpoint pairs."""
    if directed or source <= target:
        return (source, target)
    return (target, source)


class NetworkSnapshot:
    """Validated, immutable multilayer network.

    Construction assumes referential integrity and duplicate freedom were
    already established by the ingest validator; only cheap structural
    invariants are re-checked here.  All derived views (per-layer node
    sets, deduplicated edge sets, adjacency maps) are built once and the
    instance is safe to share across concurrent readers.
    """

    def __init__(
        self,
        layers: Iterable[LayerDef],
        nodes: Iterable[PhysicalNode],
        state_nodes: Iterable[StateNode],
        extended: Iterable[ExtendedEdge],
        directed: bool = False,
        directed_interlayer: bool = False,
    ):
        self.layers: tuple[LayerDef, ...] = tuple(layers)
        self.nodes: tuple[PhysicalNode, ...] = tuple(nodes)
        self.state_nodes: tuple[StateNode, ...] = tuple(state_nodes)
        self.directed = bool(directed)
        self.directed_interlayer = bool(directed_interlayer)

        if not self.layers:
            raise ValueError("a network needs at least one layer")
        if self.directed and not self.directed_interlayer:
            raise ValueError("directed intralayer edges force directed interlayer edges")

        self.layer_ids: tuple[str, ...] = tuple(l.layer_id for l in self.layers)
        self.layer_index: dict[str, int] = {lid: i for i, lid in enumerate(self.layer_ids)}

        # Undirected edges are stored with their endpoints in canonical
        # orientation; (u, v) and (v, u) denote the same link, so every
        # derived view and serialization sees one spelling of it.
        self.extended: tuple[ExtendedEdge, ...] = tuple(
            self._canonical_orientation(e) for e in extended
        )
        self.node_by_id: dict[str, PhysicalNode] = {n.node_id: n for n in self.nodes}
        self.layer_by_id: dict[str, LayerDef] = {l.layer_id: l for l in self.layers}
        self.state_by_key: dict[tuple[str, str], StateNode] = {s.key: s for s in self.state_nodes}

        # X_alpha: node presence per layer, in state-node input order.
        self._presence: dict[str, dict[str, None]] = {lid: {} for lid in self.layer_ids}
        for s in self.state_nodes:
            self._presence[s.layer_id][s.node_id] = None

        # Within-layer adjacency.  For the undirected class the out/in maps
        # are the same symmetric map.
        self._intra_out: dict[str, dict[str, dict[str, float]]] = {lid: {} for lid in self.layer_ids}
        self._intra_in: dict[str, dict[str, dict[str, float]]] = (
            {lid: {} for lid in self.layer_ids} if self.directed else self._intra_out
        )
        # Deduplicated per-layer edge maps, canonical key -> edge.  Self-loops
        # are stored but excluded from the E_alpha view used by densities.
        self._intra_edges: dict[str, dict[tuple[str, str], ExtendedEdge]] = {lid: {} for lid in self.layer_ids}

        # Cross-layer adjacency keyed by state node.
        self._inter_out: dict[tuple[str, str], dict[tuple[str, str], float]] = {}
        self._inter_in: dict[tuple[str, str], dict[tuple[str, str], float]] = (
            {} if self.directed_interlayer else self._inter_out
        )
        self._inter_edges: dict[tuple[tuple[str, str], tuple[str, str]], ExtendedEdge] = {}

        for e in self.extended:
            if e.classification == INTRALAYER:
                lid = e.layer_from
                key = intra_edge_key(e.node_from, e.node_to, self.directed)
                self._intra_edges[lid][key] = e
                self._intra_out[lid].setdefault(e.node_from, {})[e.node_to] = e.weight
                if self.directed:
                    self._intra_in[lid].setdefault(e.node_to, {})[e.node_from] = e.weight
                elif not e.is_self_loop:
                    self._intra_out[lid].setdefault(e.node_to, {})[e.node_from] = e.weight
            else:
                key = inter_edge_key(e.source, e.target, self.directed_interlayer)
                self._inter_edges[key] = e
                self._inter_out.setdefault(e.source, {})[e.target] = e.weight
                if self.directed_interlayer:
                    self._inter_in.setdefault(e.target, {})[e.source] = e.weight
                else:
                    self._inter_out.setdefault(e.target, {})[e.source] = e.weight

        # Canonical neighbor order: downstream weight sums must not
        # depend on the order edges happened to appear in the input.
        for per_layer in (self._intra_out, self._intra_in):
            for adjacency in per_layer.values():
                for node_id in adjacency:
                    adjacency[node_id] = dict(sorted(adjacency[node_id].items()))
        for adjacency in (self._inter_out, self._inter_in):
            for state in adjacency:
                adjacency[state] = dict(
                    sorted(adjacency[state].items(), key=lambda kv: (self.layer_index[kv[0][0]], kv[0][1]))
                )

        # Canonical traversal order for deterministic downstream output.
        self.state_order: tuple[tuple[str, str], ...] = tuple(
            sorted(self.state_by_key, key=lambda k: (self.layer_index[k[0]], k[1]))
        )

    def _canonical_orientation(self, e: ExtendedEdge) -> ExtendedEdge:
        if e.classification == INTRALAYER:
            if self.directed or e.node_from <= e.node_to:
                return e
            return replace(e, node_from=e.node_to, node_to=e.node_from)
        if self.directed_interlayer:
            return e
        if (self.layer_index[e.layer_from], e.node_from) <= (self.layer_index[e.layer_to], e.node_to):
            return e
        return replace(
            e,
            layer_from=e.layer_to,
            node_from=e.node_to,
            layer_to=e.layer_from,
            node_to=e.node_from,
        )

    # -- basic views ---------------------------------------------------

    @property
    def layer_count(self) -> int:
        return len(self.layers)

    def require_layer(self, layer_id: str) -> LayerDef:
        try:
            return self.layer_by_id[layer_id]
        except KeyError:
            raise UnknownLayerError(f"unknown layer {layer_id!r}") from None

    def require_node(self, node_id: str) -> PhysicalNode:
        try:
            return self.node_by_id[node_id]
        except KeyError:
            raise UnknownNodeError(f"unknown node {node_id!r}") from None

    def require_state(self, layer_id: str, node_id: str) -> StateNode:
        try:
            return self.state_by_key[(layer_id, node_id)]
        except KeyError:
            raise UnknownStateNodeError(f"no state node ({layer_id!r}, {node_id!r})") from None

    def presence(self, layer_id: str) -> tuple[str, ...]:
        """X_alpha: physical nodes present in the layer, input order."""
        self.require_layer(layer_id)
        return tuple(self._presence[layer_id])

    def presence_set(self, layer_id: str) -> frozenset[str]:
        self.require_layer(layer_id)
        return frozenset(self._presence[layer_id])

    def node_count(self, layer_id: str) -> int:
        self.require_layer(layer_id)
        return len(self._presence[layer_id])

    def edge_keys(self, layer_id: str) -> frozenset[tuple[str, str]]:
        """E_alpha: deduplicated intralayer edge keys, self-loops excluded."""
        self.require_layer(layer_id)
        return frozenset(k for k in self._intra_edges[layer_id] if k[0] != k[1])

    def edge_count(self, layer_id: str) -> int:
        return len(self.edge_keys(layer_id))

    def intra_edges(self, layer_id: str) -> dict[tuple[str, str], ExtendedEdge]:
        """All stored intralayer edges of the layer keyed canonically,
        including self-loops."""
        self.require_layer(layer_id)
        return dict(self._intra_edges[layer_id])

    def interlayer_edges(self) -> tuple[ExtendedEdge, ...]:
        return tuple(self._inter_edges.values())

    def bipartite_sets(self, layer_id: str) -> dict[str, tuple[str, ...]]:
        """Node-type label -> members of X_alpha carrying it.  Empty for
        non-bipartite layers."""
        layer = self.require_layer(layer_id)
        if not layer.bipartite:
            return {}
        sets: dict[str, list[str]] = {}
        for node_id in self._presence[layer_id]:
            label = self.node_by_id[node_id].node_type or ""
            sets.setdefault(label, []).append(node_id)
        return {label: tuple(members) for label, members in sorted(sets.items())}

    @property
    def has_full_coordinates(self) -> bool:
        return all(l.has_coordinates for l in self.layers)

    # -- adjacency -----------------------------------------------------

    def adjacency_weight(self, layer_a: str, node_i: str, layer_b: str, node_j: str) -> float:
        """a^{alpha}_{ij} for layer_a == layer_b, a^{alpha beta}_{ij}
        otherwise; 0 when no edge is stored.  Symmetric for undirected
        edge classes."""
        self.require_state(layer_a, node_i)
        self.require_state(layer_b, node_j)
        if layer_a == layer_b:
            return self._intra_out[layer_a].get(node_i, {}).get(node_j, 0.0)
        return self._inter_out.get((layer_a, node_i), {}).get((layer_b, node_j), 0.0)

    def intra_neighbors(self, layer_id: str, node_id: str, direction: str = "out") -> dict[str, float]:
        """Within-layer neighbor -> weight map (self-loop entry included
        when stored)."""
        adj = self._intra_in if direction == "in" else self._intra_out
        return adj[layer_id].get(node_id, {})

    def inter_incident(self, layer_id: str, node_id: str, direction: str = "out") -> dict[tuple[str, str], float]:
        """Cross-layer counterpart (layer, node) -> weight map."""
        adj = self._inter_in if direction == "in" else self._inter_out
        return adj.get((layer_id, node_id), {})
