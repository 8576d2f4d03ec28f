"""Summary statistics for multilayer networks.

Covers the per-state-node degree and strength scalars (within-layer and
cross-layer, with in/out variants for directed edge classes), per-node
aggregates across layers, layer densities in their unipartite/bipartite
and undirected/directed forms, pairwise layer similarity, and linear-bin
histograms of every scalar family.  All functions are pure views over an
immutable snapshot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from .model import DirectionMismatchError, NetworkSnapshot, UnknownStateNodeError

UNDIRECTED = "undirected"
IN = "in"
OUT = "out"

DEFAULT_BIN_COUNT = 20


def _resolve_direction(directed_class: bool, direction: str, what: str) -> str:
    if direction not in (UNDIRECTED, IN, OUT):
        raise ValueError(f"direction must be one of 'undirected', 'in', 'out', got {direction!r}")
    if directed_class and direction == UNDIRECTED:
        raise DirectionMismatchError(f"{what} edges are directed; request 'in' or 'out'")
    if not directed_class and direction != UNDIRECTED:
        raise DirectionMismatchError(f"{what} edges are undirected; request 'undirected'")
    return direction


def intralayer_degree(snapshot: NetworkSnapshot, node_id: str, layer_id: str, direction: str = UNDIRECTED) -> int:
    """Distinct within-layer neighbors of (node, layer), self excluded."""
    snapshot.require_state(layer_id, node_id)
    d = _resolve_direction(snapshot.directed, direction, "intralayer")
    neighbors = snapshot.intra_neighbors(layer_id, node_id, "in" if d == IN else "out")
    return sum(1 for j in neighbors if j != node_id)


def intralayer_strength(snapshot: NetworkSnapshot, node_id: str, layer_id: str, direction: str = UNDIRECTED) -> float:
    """Within-layer weight sum over neighbors, self-loops excluded."""
    snapshot.require_state(layer_id, node_id)
    d = _resolve_direction(snapshot.directed, direction, "intralayer")
    neighbors = snapshot.intra_neighbors(layer_id, node_id, "in" if d == IN else "out")
    return float(sum(w for j, w in neighbors.items() if j != node_id))


def interlayer_degree(snapshot: NetworkSnapshot, node_id: str, layer_id: str, direction: str = UNDIRECTED) -> int:
    """Count of cross-layer partners of (node, layer).

    Replica couplings (the same physical node in another layer) count,
    so the inner sum runs over all partner nodes including j == i.
    """
    snapshot.require_state(layer_id, node_id)
    d = _resolve_direction(snapshot.directed_interlayer, direction, "interlayer")
    return len(snapshot.inter_incident(layer_id, node_id, "in" if d == IN else "out"))


def interlayer_strength(snapshot: NetworkSnapshot, node_id: str, layer_id: str, direction: str = UNDIRECTED) -> float:
    snapshot.require_state(layer_id, node_id)
    d = _resolve_direction(snapshot.directed_interlayer, direction, "interlayer")
    return float(sum(snapshot.inter_incident(layer_id, node_id, "in" if d == IN else "out").values()))


_FAMILIES: dict[str, Callable[..., float]] = {
    "k_intra": intralayer_degree,
    "s_intra": intralayer_strength,
    "k_inter": interlayer_degree,
    "s_inter": interlayer_strength,
}


def _split_selector(f: str) -> tuple[str, str]:
    direction = UNDIRECTED
    family = f
    for suffix, d in (("_in", IN), ("_out", OUT)):
        if f.endswith(suffix):
            family, direction = f[: -len(suffix)], d
            break
    if family not in _FAMILIES:
        raise ValueError(f"unknown metric selector {f!r}")
    return family, direction


def layers_of(snapshot: NetworkSnapshot, node_id: str) -> tuple[str, ...]:
    """Layers in which the physical node appears, canonical order."""
    snapshot.require_node(node_id)
    return tuple(lid for lid in snapshot.layer_ids if (lid, node_id) in snapshot.state_by_key)


def participation(snapshot: NetworkSnapshot, node_id: str) -> int:
    """Number of layers in which the physical node appears."""
    return len(layers_of(snapshot, node_id))


def aggregate_over_layers(snapshot: NetworkSnapshot, node_id: str, f: str, mode: str = "sum") -> float:
    """Sum or mean of a state-node scalar over the layers holding the node.

    Layers where the node is absent contribute nothing; the mean divides
    by the participation count, not by the layer count.
    """
    if mode not in ("sum", "mean"):
        raise ValueError(f"mode must be 'sum' or 'mean', got {mode!r}")
    family, direction = _split_selector(f)
    present = layers_of(snapshot, node_id)
    if not present:
        raise UnknownStateNodeError(f"node {node_id!r} appears in no layer")
    values = [_FAMILIES[family](snapshot, node_id, lid, direction) for lid in present]
    total = float(sum(values))
    return total if mode == "sum" else total / len(values)


def layer_density(snapshot: NetworkSnapshot, layer_id: str) -> float | None:
    """Fraction of realizable within-layer edges that exist.

    The formula follows the layer class: unipartite uses ordered or
    unordered node pairs, bipartite uses cross-set pairs (doubled when
    directed).  Deduplicated edges, self-loops excluded.  None when the
    denominator is zero; that is reported as undefined, never as 0.
    """
    layer = snapshot.require_layer(layer_id)
    m = snapshot.edge_count(layer_id)
    if layer.bipartite:
        sizes = [len(members) for members in snapshot.bipartite_sets(layer_id).values()]
        if len(sizes) != 2 or 0 in sizes:
            return None
        denom = sizes[0] * sizes[1] * (2 if snapshot.directed else 1)
        return m / denom
    n = snapshot.node_count(layer_id)
    if n <= 1:
        return None
    pairs = n * (n - 1)
    return m / pairs if snapshot.directed else 2 * m / pairs


def average_density(snapshot: NetworkSnapshot) -> tuple[float | None, int]:
    """Mean of the defined per-layer densities.

    Layers whose density is undefined are left out of the mean rather
    than treated as zero; the second element reports how many were
    excluded.  None when every layer is undefined.
    """
    values = []
    excluded = 0
    for lid in snapshot.layer_ids:
        d = layer_density(snapshot, lid)
        if d is None:
            excluded += 1
        else:
            values.append(d)
    if not values:
        return None, excluded
    return sum(values) / len(values), excluded


def _shared_labels(snapshot: NetworkSnapshot, a: str, b: str) -> list[str]:
    sets_a = snapshot.bipartite_sets(a)
    sets_b = snapshot.bipartite_sets(b)
    return sorted(set(sets_a) & set(sets_b))


def jaccard_nodes(snapshot: NetworkSnapshot, a: str, b: str, subset: str = "all") -> float | None:
    """Node-identity overlap between two layers.

    ``subset`` may be "all", "set_A"/"set_B" (the alphabetically first
    and second node_type labels present in both layers), or a literal
    label.  Per-set values exist only for labels shared by both layers;
    anything unresolvable is undefined (None), as is an empty union.
    """
    snapshot.require_layer(a)
    snapshot.require_layer(b)
    if subset == "all":
        xa, xb = snapshot.presence_set(a), snapshot.presence_set(b)
    else:
        shared = _shared_labels(snapshot, a, b)
        if subset == "set_A":
            label = shared[0] if shared else None
        elif subset == "set_B":
            label = shared[1] if len(shared) > 1 else None
        else:
            label = subset if subset in shared else None
        if label is None:
            return None
        xa = frozenset(snapshot.bipartite_sets(a).get(label, ()))
        xb = frozenset(snapshot.bipartite_sets(b).get(label, ()))
    union = xa | xb
    if not union:
        return None
    return len(xa & xb) / len(union)


def jaccard_edges(snapshot: NetworkSnapshot, a: str, b: str) -> float | None:
    """Edge-identity overlap on canonical intralayer keys, weights ignored."""
    ea, eb = snapshot.edge_keys(a), snapshot.edge_keys(b)
    union = ea | eb
    if not union:
        return None
    return len(ea & eb) / len(union)


def histogram(values: Iterable[float], bin_count: int = DEFAULT_BIN_COUNT) -> tuple[list[float], list[int]]:
    """Linear binning over [min, max] with the max in the last bin.

    Empty input gives an empty histogram; a constant input gives one bin
    of nominal width 1 centered on the value.
    """
    if bin_count < 1:
        raise ValueError("bin_count must be >= 1")
    vals = [float(v) for v in values]
    if not vals:
        return [], []
    lo, hi = min(vals), max(vals)
    if lo == hi:
        return [lo - 0.5, lo + 0.5], [len(vals)]
    width = (hi - lo) / bin_count
    edges = [lo + i * width for i in range(bin_count)] + [hi]
    counts = [0] * bin_count
    for v in vals:
        idx = min(int((v - lo) / width), bin_count - 1)
        counts[idx] += 1
    return edges, counts


@dataclass
class MetricsBundle:
    """Everything the engine reports about one snapshot, precomputed."""

    directed: bool
    directed_interlayer: bool
    state_rows: list[dict[str, Any]]
    physical_rows: list[dict[str, Any]]
    layer_rows: list[dict[str, Any]]
    average_density: float | None
    excluded_layer_count: int
    pairwise: dict[str, Any]
    distributions: dict[str, Any]
    presence_matrix: dict[str, Any]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "directed": self.directed,
            "directed_interlayer": self.directed_interlayer,
            "layer_count": len(self.layer_rows),
            "node_count": len(self.physical_rows),
            "state_node_count": len(self.state_rows),
            "state_nodes": self.state_rows,
            "physical_nodes": self.physical_rows,
            "layers": self.layer_rows,
            "average_density": {"value": self.average_density, "excluded_layer_count": self.excluded_layer_count},
            "pairwise": self.pairwise,
            "distributions": self.distributions,
            "presence_matrix": self.presence_matrix,
        }


def _active_families(snapshot: NetworkSnapshot) -> list[tuple[str, str, str]]:
    """(column name, family, direction) triples for the snapshot's classes."""
    out: list[tuple[str, str, str]] = []
    for family in ("k_intra", "s_intra"):
        if snapshot.directed:
            out.append((f"{family}_out", family, OUT))
            out.append((f"{family}_in", family, IN))
        else:
            out.append((family, family, UNDIRECTED))
    for family in ("k_inter", "s_inter"):
        if snapshot.directed_interlayer:
            out.append((f"{family}_out", family, OUT))
            out.append((f"{family}_in", family, IN))
        else:
            out.append((family, family, UNDIRECTED))
    return out


def compute_bundle(snapshot: NetworkSnapshot, bin_count: int = DEFAULT_BIN_COUNT) -> MetricsBundle:
    """Compute every reportable quantity in one deterministic pass."""
    families = _active_families(snapshot)

    state_rows: list[dict[str, Any]] = []
    for lid, nid in snapshot.state_order:
        row: dict[str, Any] = {"layer_id": lid, "node_id": nid}
        for column, family, direction in families:
            row[column] = _FAMILIES[family](snapshot, nid, lid, direction)
        state_rows.append(row)

    by_node: dict[str, list[dict[str, Any]]] = {}
    for row in state_rows:
        by_node.setdefault(row["node_id"], []).append(row)

    physical_rows: list[dict[str, Any]] = []
    for node_id in sorted(snapshot.node_by_id):
        rows = by_node.get(node_id, [])
        entry: dict[str, Any] = {"node_id": node_id, "participation": len(rows)}
        for column, _, _ in families:
            total = float(sum(r[column] for r in rows))
            entry[f"{column}_sum"] = total
            entry[f"{column}_mean"] = total / len(rows) if rows else None
        physical_rows.append(entry)

    layer_rows = []
    for lid in snapshot.layer_ids:
        layer_rows.append(
            {
                "layer_id": lid,
                "bipartite": snapshot.layer_by_id[lid].bipartite,
                "node_count": snapshot.node_count(lid),
                "edge_count": snapshot.edge_count(lid),
                "density": layer_density(snapshot, lid),
            }
        )
    avg, excluded = average_density(snapshot)

    ids = snapshot.layer_ids
    j_node = [[jaccard_nodes(snapshot, a, b) for b in ids] for a in ids]
    j_edge = [[jaccard_edges(snapshot, a, b) for b in ids] for a in ids]
    shared_nodes = [[len(snapshot.presence_set(a) & snapshot.presence_set(b)) for b in ids] for a in ids]
    shared_edges = [[len(snapshot.edge_keys(a) & snapshot.edge_keys(b)) for b in ids] for a in ids]
    pairwise: dict[str, Any] = {
        "layer_ids": list(ids),
        "j_node": j_node,
        "j_edge": j_edge,
        "shared_node_count": shared_nodes,
        "shared_edge_count": shared_edges,
    }
    labels = sorted({label for lid in ids for label in snapshot.bipartite_sets(lid)})
    if labels:
        pairwise["j_node_per_set"] = {
            label: [[jaccard_nodes(snapshot, a, b, label) for b in ids] for a in ids] for label in labels
        }

    node_ids = sorted(snapshot.node_by_id)
    rows_matrix = [[1 if (lid, nid) in snapshot.state_by_key else 0 for lid in ids] for nid in node_ids]
    presence_matrix = {"node_ids": node_ids, "layer_ids": list(ids), "rows": rows_matrix}

    def hist(values: Sequence[float]) -> dict[str, list]:
        edges, counts = histogram(values, bin_count)
        return {"edges": edges, "counts": counts}

    distributions: dict[str, Any] = {}
    for column, _, _ in families:
        distributions[column] = hist([row[column] for row in state_rows])
    distributions["intralayer_weight"] = hist(
        [e.weight for lid in ids for e in snapshot.intra_edges(lid).values()]
    )
    distributions["interlayer_weight"] = hist([e.weight for e in snapshot.interlayer_edges()])
    distributions["multiplexity"] = hist([sum(row) for row in rows_matrix if sum(row) > 0])

    return MetricsBundle(
        directed=snapshot.directed,
        directed_interlayer=snapshot.directed_interlayer,
        state_rows=state_rows,
        physical_rows=physical_rows,
        layer_rows=layer_rows,
        average_density=avg,
        excluded_layer_count=excluded,
        pairwise=pairwise,
        distributions=distributions,
        presence_matrix=presence_matrix,
    )
