/** Stacked view: every layer as an oblique plane, nodes on the shared
 * union layout, couplings drawn between planes. */

import { fitTransform, planeCorners, stackBounds } from "../geometry.js";
import { alphaFor, COLORS, DIM_ALPHA, emptyScene, FULL_ALPHA, placeholderScene, Scene } from "../scene.js";
import { ModeState } from "../state.js";
import { FilteredView, Point, StackPayload } from "../types.js";
import { constantStyles, NodeStyles, stateKey } from "./styles.js";

function positionIndex(stack: StackPayload, toPx: (x: number, y: number) => Point): Map<string, Point> {
  const index = new Map<string, Point>();
  for (const p of stack.projection.positions) {
    index.set(stateKey(p.layer_id, p.node_id), toPx(p.x, p.y));
  }
  return index;
}

export function buildNetworkScene(
  view: FilteredView,
  stack: StackPayload | null,
  state: ModeState,
  width: number,
  height: number,
  styles: NodeStyles = constantStyles(),
): Scene {
  if (stack === null) {
    return placeholderScene(width, height, "stacked layout unavailable");
  }
  const scene = emptyScene(width, height);
  const toPx = fitTransform(stackBounds(stack.projection), { width, height, margin: 24 });
  const at = positionIndex(stack, toPx);
  const params = stack.projection.params;

  const visibleLayers = new Set(view.state_nodes.map((s) => s.layer_id));
  // back plane first so nearer layers overdraw it
  const planes = [...stack.projection.layers].sort((a, b) => b.index - a.index);
  for (const layer of planes) {
    if (!visibleLayers.has(layer.layer_id)) continue;
    const corners = planeCorners(params, layer.index).map(([x, y]) => toPx(x, y));
    scene.ops.push({
      kind: "polygon",
      points: corners,
      fill: COLORS.plane,
      stroke: COLORS.planeEdge,
      alpha: 0.85,
    });
    const [lx, ly] = corners[0];
    scene.ops.push({
      kind: "text",
      x: lx,
      y: ly - 6,
      text: layer.layer_id,
      size: 12,
      fill: COLORS.label,
      alpha: FULL_ALPHA,
    });
  }

  for (const e of view.intralayer_edges) {
    const a = at.get(stateKey(e.layer_from, e.node_from));
    const b = at.get(stateKey(e.layer_to, e.node_to));
    if (!a || !b) continue;
    scene.ops.push({
      kind: "line",
      x1: a[0],
      y1: a[1],
      x2: b[0],
      y2: b[1],
      width: 1 + Math.min(3, Math.log1p(e.weight)),
      stroke: COLORS.intraEdge,
      alpha: alphaFor(e.dimmed),
    });
  }
  for (const e of view.interlayer_edges) {
    const a = at.get(stateKey(e.layer_from, e.node_from));
    const b = at.get(stateKey(e.layer_to, e.node_to));
    if (!a || !b) continue;
    scene.ops.push({
      kind: "line",
      x1: a[0],
      y1: a[1],
      x2: b[0],
      y2: b[1],
      width: 1,
      stroke: COLORS.interEdge,
      alpha: e.dimmed ? DIM_ALPHA : 0.8,
      dash: [4, 3],
    });
  }

  for (const s of view.state_nodes) {
    const p = at.get(stateKey(s.layer_id, s.node_id));
    if (!p) continue;
    scene.ops.push({
      kind: "circle",
      x: p[0],
      y: p[1],
      r: styles.radius(s.layer_id, s.node_id),
      fill: styles.color(s.layer_id, s.node_id),
      stroke: COLORS.nodeStroke,
      alpha: alphaFor(s.dimmed),
      tag: `state:${s.layer_id}:${s.node_id}`,
    });
  }
  return scene;
}
