/** File-only operation: when no engine is reachable the UI still draws
 * the document it loaded, using simple deterministic placements and a
 * plain union aggregate.  Everything here is display scaffolding; with
 * a service connected all of these payloads come from the engine.
 */

import { circularPositions } from "./localview.js";
import {
  LayerGraphLayout,
  MetaPayload,
  NetworkDocument,
  StackPayload,
  UnionLayout,
} from "./types.js";

const DEFAULT_PARAMS = {
  scale: 1.0,
  compression: 0.5,
  layer_gap: 1.0,
  shear_x: 0.35,
  shear_y: -0.55,
};

export function localUnion(doc: NetworkDocument): UnionLayout {
  return {
    scope: "union",
    layout_kind: "circular",
    positions: circularPositions(doc.state_nodes.map((s) => s.node_id)),
  };
}

/** Stack the document's layers with the default oblique parameters. */
export function localStack(doc: NetworkDocument): StackPayload {
  const union = localUnion(doc);
  const layerIds = doc.layers.map((l) => l.layer_id);
  const index = new Map(layerIds.map((lid, i) => [lid, i]));
  const positions = doc.state_nodes.map((s) => {
    const p = union.positions[s.node_id] ?? [0.5, 0.5];
    const i = index.get(s.layer_id) ?? 0;
    return {
      layer_id: s.layer_id,
      node_id: s.node_id,
      x: p[0] * DEFAULT_PARAMS.scale + i * DEFAULT_PARAMS.shear_x,
      y: p[1] * DEFAULT_PARAMS.scale * DEFAULT_PARAMS.compression + i * DEFAULT_PARAMS.shear_y,
    };
  });
  return {
    union,
    projection: {
      params: { ...DEFAULT_PARAMS },
      layers: layerIds.map((layer_id, i) => ({ layer_id, index: i })),
      positions,
    },
  };
}

/** Layer bubbles on a circle with locally computed pair statistics. */
export function localLayerGraph(doc: NetworkDocument): LayerGraphLayout {
  const layerIds = doc.layers.map((l) => l.layer_id);
  const present = new Map<string, Set<string>>(layerIds.map((lid) => [lid, new Set<string>()]));
  for (const s of doc.state_nodes) present.get(s.layer_id)?.add(s.node_id);
  const coupling = new Map<string, number>();
  const order = new Map(layerIds.map((lid, i) => [lid, i]));
  for (const e of doc.extended) {
    if (e.layer_from === e.layer_to) continue;
    const [a, b] =
      (order.get(e.layer_from) ?? 0) <= (order.get(e.layer_to) ?? 0)
        ? [e.layer_from, e.layer_to]
        : [e.layer_to, e.layer_from];
    const key = `${a}\u0000${b}`;
    coupling.set(key, (coupling.get(key) ?? 0) + (e.weight ?? 1.0));
  }
  const edges: LayerGraphLayout["edges"] = [];
  for (let i = 0; i < layerIds.length; i++) {
    for (let j = i + 1; j < layerIds.length; j++) {
      const a = layerIds[i];
      const b = layerIds[j];
      let shared = 0;
      for (const nid of present.get(a) ?? []) {
        if (present.get(b)?.has(nid)) shared += 1;
      }
      const weight = coupling.get(`${a}\u0000${b}`) ?? 0;
      if (shared > 0 || weight > 0) {
        edges.push({ layer_a: a, layer_b: b, shared_node_count: shared, coupling_weight: weight });
      }
    }
  }
  return { mode: "force", positions: circularPositions(layerIds), edges };
}

/** Linear lat/lon placement when every layer carries coordinates;
 * null otherwise (the map stays inactive, matching the engine rule). */
export function localGeo(doc: NetworkDocument): LayerGraphLayout | null {
  const coords: [string, number, number][] = [];
  for (const layer of doc.layers) {
    if (typeof layer.latitude !== "number" || typeof layer.longitude !== "number") return null;
    coords.push([layer.layer_id, layer.latitude, layer.longitude]);
  }
  if (coords.length === 0) return null;
  const lats = coords.map(([, lat]) => lat);
  const lons = coords.map(([, , lon]) => lon);
  const latSpan = Math.max(Math.max(...lats) - Math.min(...lats), 1e-9);
  const lonSpan = Math.max(Math.max(...lons) - Math.min(...lons), 1e-9);
  const span = Math.max(latSpan, lonSpan);
  const positions: LayerGraphLayout["positions"] = {};
  for (const [lid, lat, lon] of coords) {
    positions[lid] = [
      0.5 + (0.8 * (lon - (Math.min(...lons) + lonSpan / 2))) / span,
      0.5 - (0.8 * (lat - (Math.min(...lats) + latSpan / 2))) / span,
    ];
  }
  return { mode: "geographic", positions, edges: localLayerGraph(doc).edges };
}

/** Plain union aggregate: each distinct within-layer pair once. */
export function localMetaUnion(doc: NetworkDocument): MetaPayload {
  const provenance = new Map<string, { node_from: string; node_to: string; layers: { layer_id: string; weight: number }[] }>();
  for (const e of doc.extended) {
    if (e.layer_from !== e.layer_to) continue;
    const [u, v] = e.node_from <= e.node_to ? [e.node_from, e.node_to] : [e.node_to, e.node_from];
    const key = `${u}\u0000${v}`;
    let entry = provenance.get(key);
    if (!entry) provenance.set(key, (entry = { node_from: u, node_to: v, layers: [] }));
    entry.layers.push({ layer_id: e.layer_from, weight: e.weight ?? 1.0 });
  }
  const neighborCounts = new Map<string, number>();
  const nodeIds = [...new Set(doc.state_nodes.map((s) => s.node_id))].sort();
  for (const nid of nodeIds) neighborCounts.set(nid, 0);
  for (const entry of provenance.values()) {
    if (entry.node_from === entry.node_to) continue;
    neighborCounts.set(entry.node_from, (neighborCounts.get(entry.node_from) ?? 0) + 1);
    neighborCounts.set(entry.node_to, (neighborCounts.get(entry.node_to) ?? 0) + 1);
  }
  const keys = [...provenance.keys()].sort();
  return {
    mode: "union",
    directed: false,
    nodes: nodeIds.map((node_id) => {
      const k = neighborCounts.get(node_id) ?? 0;
      return { node_id, k_meta: k, s_meta: k };
    }),
    edges: keys.map((key) => {
      const entry = provenance.get(key)!;
      return { node_from: entry.node_from, node_to: entry.node_to, weight: 1.0, layers: entry.layers };
    }),
  };
}
