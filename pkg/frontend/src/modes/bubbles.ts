/** Layer-bubble drawing shared by the relatedness and map views: one
 * circle per layer with its micro-graph inside, connectors annotated
 * with shared-node counts. */

import { alphaFor, COLORS, FULL_ALPHA, Scene } from "../scene.js";
import { FilteredView, LayerGraphLayout, Point, UnionLayout } from "../types.js";

export interface LayerContents {
  nodes: FilteredView["state_nodes"];
  edges: FilteredView["intralayer_edges"];
}

export function contentsByLayer(view: FilteredView): Map<string, LayerContents> {
  const by = new Map<string, LayerContents>();
  const bucket = (layerId: string): LayerContents => {
    let entry = by.get(layerId);
    if (!entry) by.set(layerId, (entry = { nodes: [], edges: [] }));
    return entry;
  };
  for (const s of view.state_nodes) bucket(s.layer_id).nodes.push(s);
  for (const e of view.intralayer_edges) bucket(e.layer_from).edges.push(e);
  return by;
}

/** Radius proportional to sqrt(visible node count), clamped. */
export function bubbleRadius(nodeCount: number, maxCount: number, maxRadius: number): number {
  if (maxCount <= 0) return maxRadius * 0.4;
  return Math.max(14, maxRadius * Math.sqrt(nodeCount / maxCount));
}

export function drawMicroGraph(
  scene: Scene,
  contents: LayerContents,
  union: UnionLayout,
  cx: number,
  cy: number,
  r: number,
): void {
  const inner = r * 0.72;
  const place = (nodeId: string): Point | null => {
    const p = union.positions[nodeId];
    if (!p) return null;
    return [cx + (p[0] - 0.5) * 2 * inner, cy + (p[1] - 0.5) * 2 * inner];
  };
  for (const e of contents.edges) {
    const a = place(e.node_from);
    const b = place(e.node_to);
    if (!a || !b) continue;
    scene.ops.push({
      kind: "line",
      x1: a[0],
      y1: a[1],
      x2: b[0],
      y2: b[1],
      width: 0.8,
      stroke: COLORS.intraEdge,
      alpha: alphaFor(e.dimmed) * 0.9,
    });
  }
  for (const s of contents.nodes) {
    const p = place(s.node_id);
    if (!p) continue;
    scene.ops.push({
      kind: "circle",
      x: p[0],
      y: p[1],
      r: 2.2,
      fill: COLORS.node,
      alpha: alphaFor(s.dimmed),
      tag: `state:${s.layer_id}:${s.node_id}`,
    });
  }
}

export interface BubblePlacement {
  x: number;
  y: number;
  r: number;
}

/** Draw connectors then bubbles; returns each bubble's placement so the
 * caller can annotate or hit-test. */
export function drawBubbleGraph(
  scene: Scene,
  layout: LayerGraphLayout,
  view: FilteredView,
  union: UnionLayout | null,
  toPx: (x: number, y: number) => Point,
  maxRadius: number,
  highlighted: ReadonlySet<string> = new Set(),
): Map<string, BubblePlacement> {
  const contents = contentsByLayer(view);
  const layerIds = Object.keys(layout.positions);
  const placements = new Map<string, BubblePlacement>();
  const maxCount = layerIds.reduce((m, lid) => Math.max(m, contents.get(lid)?.nodes.length ?? 0), 0);
  for (const lid of layerIds) {
    const [px, py] = toPx(layout.positions[lid][0], layout.positions[lid][1]);
    placements.set(lid, { x: px, y: py, r: bubbleRadius(contents.get(lid)?.nodes.length ?? 0, maxCount, maxRadius) });
  }

  const maxCoupling = layout.edges.reduce((m, e) => Math.max(m, e.coupling_weight), 0);
  for (const e of layout.edges) {
    const a = placements.get(e.layer_a);
    const b = placements.get(e.layer_b);
    if (!a || !b) continue;
    scene.ops.push({
      kind: "line",
      x1: a.x,
      y1: a.y,
      x2: b.x,
      y2: b.y,
      width: maxCoupling > 0 ? 1 + 3 * (e.coupling_weight / maxCoupling) : 1,
      stroke: COLORS.interEdge,
      alpha: 0.5,
    });
    scene.ops.push({
      kind: "text",
      x: (a.x + b.x) / 2,
      y: (a.y + b.y) / 2 - 4,
      text: String(e.shared_node_count),
      size: 10,
      fill: COLORS.label,
      alpha: 0.8,
      align: "center",
    });
  }

  for (const lid of layerIds) {
    const place = placements.get(lid)!;
    scene.ops.push({
      kind: "circle",
      x: place.x,
      y: place.y,
      r: place.r,
      fill: COLORS.panel,
      stroke: highlighted.has(lid) ? COLORS.accent : COLORS.planeEdge,
      alpha: FULL_ALPHA,
      tag: `layer:${lid}`,
    });
    const entry = contents.get(lid);
    if (entry && union) drawMicroGraph(scene, entry, union, place.x, place.y, place.r);
    scene.ops.push({
      kind: "text",
      x: place.x,
      y: place.y + place.r + 14,
      text: lid,
      size: 12,
      fill: COLORS.label,
      alpha: FULL_ALPHA,
      align: "center",
    });
  }
  return placements;
}
