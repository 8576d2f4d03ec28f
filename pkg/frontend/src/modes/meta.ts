/** Aggregate view: the network collapsed onto physical nodes, with a
 * weight threshold slider applied client-side (display filtering only;
 * the aggregation itself always comes from the payload). */

import { formatNumber, sequentialScale } from "../color.js";
import { unitTransform } from "../geometry.js";
import { alphaFor, COLORS, emptyScene, FULL_ALPHA, placeholderScene, Scene } from "../scene.js";
import { ModeState } from "../state.js";
import { MetaNodeRow, MetaPayload, Point, UnionLayout } from "../types.js";

function nodeStrength(row: MetaNodeRow): number {
  if (row.s_meta !== undefined) return row.s_meta;
  return (row.s_meta_out ?? 0) + (row.s_meta_in ?? 0);
}

export function visibleMetaEdges(meta: MetaPayload, threshold: number): MetaPayload["edges"] {
  return meta.edges.filter((e) => e.weight >= threshold);
}

export function buildMetaScene(
  meta: MetaPayload | null,
  union: UnionLayout | null,
  state: ModeState,
  width: number,
  height: number,
): Scene {
  if (meta === null || union === null) {
    return placeholderScene(width, height, "aggregate payload unavailable");
  }
  const scene = emptyScene(width, height);
  const toPx = unitTransform({ width, height, margin: 40 });
  const at = new Map<string, Point>();
  for (const row of meta.nodes) {
    const p = union.positions[row.node_id];
    if (p) at.set(row.node_id, toPx(p[0], p[1]));
  }

  const selectedNode =
    state.selection !== null && "node_id" in state.selection ? state.selection.node_id : null;
  const litNodes = new Set<string>();
  if (selectedNode !== null) litNodes.add(selectedNode);

  const edges = visibleMetaEdges(meta, state.metaThreshold);
  const maxWeight = edges.reduce((m, e) => Math.max(m, e.weight), 0);
  for (const e of edges) {
    if (selectedNode !== null && (e.node_from === selectedNode || e.node_to === selectedNode)) {
      litNodes.add(e.node_from);
      litNodes.add(e.node_to);
    }
  }

  for (const e of edges) {
    const a = at.get(e.node_from);
    const b = at.get(e.node_to);
    if (!a || !b) continue;
    const dimmed = selectedNode !== null && e.node_from !== selectedNode && e.node_to !== selectedNode;
    scene.ops.push({
      kind: "line",
      x1: a[0],
      y1: a[1],
      x2: b[0],
      y2: b[1],
      width: maxWeight > 0 ? 1 + 4 * (e.weight / maxWeight) : 1,
      stroke: COLORS.intraEdge,
      alpha: alphaFor(dimmed),
    });
  }

  const strengths = meta.nodes.map(nodeStrength);
  const colorScale = sequentialScale(strengths);
  const maxStrength = strengths.reduce((m, v) => Math.max(m, v), 0);
  for (const row of meta.nodes) {
    const p = at.get(row.node_id);
    if (!p) continue;
    const s = nodeStrength(row);
    const r = 4 + (maxStrength > 0 ? 8 * Math.sqrt(s / maxStrength) : 0);
    const dimmed = selectedNode !== null && !litNodes.has(row.node_id);
    scene.ops.push({
      kind: "circle",
      x: p[0],
      y: p[1],
      r,
      fill: colorScale.color(s),
      stroke: COLORS.nodeStroke,
      alpha: alphaFor(dimmed),
      tag: `node:${row.node_id}`,
    });
    scene.ops.push({
      kind: "text",
      x: p[0],
      y: p[1] - r - 4,
      text: row.node_id,
      size: 10,
      fill: COLORS.label,
      alpha: alphaFor(dimmed),
      align: "center",
    });
  }

  scene.ops.push({
    kind: "text",
    x: 12,
    y: height - 12,
    text: `${meta.mode} aggregate · ${edges.length}/${meta.edges.length} links ≥ ${formatNumber(state.metaThreshold)}`,
    size: 12,
    fill: COLORS.label,
    alpha: FULL_ALPHA,
  });
  return scene;
}
