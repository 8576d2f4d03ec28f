"""Deterministic random-network documents for the test corpus.

Documents are built as plain dicts in the wire schema, never through the
package under test, so the oracle and the engine meet only at the
document boundary.  Every choice flows from a seeded random.Random, so
the corpus is identical on every run.
"""

from __future__ import annotations

import random
from typing import Any

# (directed, bipartite, weighted)
COMBOS = [
    (directed, bipartite, weighted)
    for directed in (False, True)
    for bipartite in (False, True)
    for weighted in (False, True)
]

NODE_TYPES = ("plant", "pollinator")


def random_document(seed: int, directed: bool, bipartite: bool, weighted: bool) -> dict[str, Any]:
    rng = random.Random(seed)
    layer_count = rng.randint(1, 6)
    node_count = rng.randint(2, 25)
    layer_ids = [f"L{a}" for a in range(layer_count)]
    node_ids = [f"n{i:02d}" for i in range(node_count)]
    node_type = {nid: rng.choice(NODE_TYPES) for nid in node_ids}

    directed_inter = True if directed else rng.random() < 0.3
    with_coords = rng.random() < 0.3

    layers = []
    for lid in layer_ids:
        item: dict[str, Any] = {"layer_id": lid}
        if bipartite:
            item["bipartite"] = True
        if with_coords:
            item["latitude"] = round(rng.uniform(-60, 60), 4)
            item["longitude"] = round(rng.uniform(-150, 150), 4)
        if rng.random() < 0.3:
            item["region"] = rng.choice(["north", "south", "east"])
        layers.append(item)

    nodes = []
    for nid in node_ids:
        item = {"node_id": nid}
        if bipartite:
            item["node_type"] = node_type[nid]
        elif rng.random() < 0.2:
            item["node_type"] = node_type[nid]
        if rng.random() < 0.25:
            item["abundance"] = round(rng.uniform(0, 10), 3)
        nodes.append(item)

    presence: dict[str, list[str]] = {}
    state_nodes = []
    for lid in layer_ids:
        members = sorted(rng.sample(node_ids, rng.randint(1, node_count)))
        presence[lid] = members
        for nid in members:
            item = {"layer_id": lid, "node_id": nid}
            if rng.random() < 0.15:
                item["activity"] = round(rng.uniform(0, 1), 3)
            state_nodes.append(item)

    def weight_field(item: dict[str, Any]) -> dict[str, Any]:
        if weighted:
            item["weight"] = round(rng.uniform(0.1, 5.0), 3)
        return item

    def emit(lf: str, nf: str, lt: str, nt: str, scramble: bool) -> dict[str, Any]:
        if scramble and rng.random() < 0.5:
            lf, nf, lt, nt = lt, nt, lf, nf
        return weight_field({"layer_from": lf, "node_from": nf, "layer_to": lt, "node_to": nt})

    extended: list[dict[str, Any]] = []
    for lid in layer_ids:
        members = presence[lid]
        if bipartite:
            tops = [v for v in members if node_type[v] == NODE_TYPES[0]]
            bottoms = [v for v in members if node_type[v] == NODE_TYPES[1]]
            candidates = [(u, v) for u in tops for v in bottoms]
            if directed:
                candidates += [(v, u) for u in tops for v in bottoms]
        elif directed:
            candidates = [(u, v) for u in members for v in members if u != v]
        else:
            candidates = [(u, v) for a, u in enumerate(members) for v in members[a + 1 :]]
        p = rng.uniform(0.05, 0.4)
        for u, v in candidates:
            if rng.random() < p:
                extended.append(emit(lid, u, lid, v, scramble=not directed))
        for v in members:
            if rng.random() < 0.05:
                extended.append(weight_field({"layer_from": lid, "node_from": v, "layer_to": lid, "node_to": v}))

    for a, la in enumerate(layer_ids):
        for lb in layer_ids[a + 1 :]:
            shared = [v for v in presence[la] if v in set(presence[lb])]
            for v in shared:
                if rng.random() < 0.4:
                    extended.append(emit(la, v, lb, v, scramble=not directed_inter))
            for u in presence[la]:
                for w in presence[lb]:
                    if u == w or rng.random() >= 0.03:
                        continue
                    extended.append(emit(la, u, lb, w, scramble=not directed_inter))
                    if directed_inter and rng.random() < 0.25:
                        extended.append(emit(lb, w, la, u, scramble=False))

    rng.shuffle(extended)
    rng.shuffle(nodes)
    rng.shuffle(state_nodes)
    return {
        "directed": directed,
        "directed_interlayer": directed_inter,
        "layers": layers,
        "nodes": nodes,
        "state_nodes": state_nodes,
        "extended": extended,
    }


def corpus_documents(per_combo: int = 25) -> list[dict[str, Any]]:
    """The full oracle corpus: per_combo documents for each of the 8
    (directed, bipartite, weighted) combinations."""
    docs = []
    for ci, (directed, bipartite, weighted) in enumerate(COMBOS):
        for s in range(per_combo):
            docs.append(random_document(1000 * ci + s, directed, bipartite, weighted))
    return docs


def stress_document() -> dict[str, Any]:
    """8 layers, 100 physical nodes, 8,000 intralayer and 7,000
    interlayer links, all state nodes present."""
    rng = random.Random(4242)
    layer_ids = [f"L{a}" for a in range(8)]
    node_ids = [f"n{i:03d}" for i in range(100)]
    layers = [{"layer_id": lid} for lid in layer_ids]
    nodes = [{"node_id": nid} for nid in node_ids]
    state_nodes = [{"layer_id": lid, "node_id": nid} for lid in layer_ids for nid in node_ids]

    all_pairs = [(u, v) for a, u in enumerate(node_ids) for v in node_ids[a + 1 :]]
    extended = []
    for lid in layer_ids:
        for u, v in rng.sample(all_pairs, 1000):
            extended.append(
                {"layer_from": lid, "node_from": u, "layer_to": lid, "node_to": v, "weight": round(rng.uniform(0.05, 1.0), 4)}
            )

    for a, la in enumerate(layer_ids):
        for lb in layer_ids[a + 1 :]:
            combos = [(u, w) for u in node_ids for w in node_ids]
            for u, w in rng.sample(combos, 250):
                extended.append(
                    {"layer_from": la, "node_from": u, "layer_to": lb, "node_to": w, "weight": round(rng.uniform(0.05, 1.0), 4)}
                )

    return {
        "directed": False,
        "directed_interlayer": False,
        "layers": layers,
        "nodes": nodes,
        "state_nodes": state_nodes,
        "extended": extended,
    }
