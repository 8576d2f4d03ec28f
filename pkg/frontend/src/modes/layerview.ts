/** Relatedness view: layers as force-arranged bubbles, plus the
 * side-by-side comparison panel for a picked pair. */

import { formatNumber } from "../color.js";
import { unitTransform } from "../geometry.js";
import { COLORS, emptyScene, FULL_ALPHA, placeholderScene, Scene } from "../scene.js";
import { ModeState } from "../state.js";
import { ComparePayload, FilteredView, LayerGraphLayout, UnionLayout } from "../types.js";
import { drawBubbleGraph } from "./bubbles.js";

const PANEL_WIDTH = 300;

export function buildLayerScene(
  layerGraph: LayerGraphLayout | null,
  view: FilteredView,
  union: UnionLayout | null,
  state: ModeState,
  compare: ComparePayload | null,
  width: number,
  height: number,
): Scene {
  if (layerGraph === null) {
    return placeholderScene(width, height, "layer arrangement unavailable");
  }
  const scene = emptyScene(width, height);
  const panelOpen = compare !== null;
  const graphWidth = panelOpen ? width - PANEL_WIDTH : width;
  const toPx = unitTransform({ width: graphWidth, height, margin: 70 });
  const highlighted = new Set(state.comparePair ?? []);
  drawBubbleGraph(scene, layerGraph, view, union, toPx, Math.min(graphWidth, height) / 6, highlighted);

  if (panelOpen) {
    drawComparePanel(scene, compare, width - PANEL_WIDTH, 0, PANEL_WIDTH, height);
  } else {
    scene.ops.push({
      kind: "text",
      x: 12,
      y: height - 12,
      text: "pick two layers to compare",
      size: 12,
      fill: COLORS.label,
      alpha: 0.7,
    });
  }
  return scene;
}

function drawComparePanel(
  scene: Scene,
  compare: ComparePayload,
  x: number,
  y: number,
  w: number,
  h: number,
): void {
  scene.ops.push({
    kind: "rect",
    x: x + 4,
    y: y + 4,
    w: w - 8,
    h: h - 8,
    fill: COLORS.panel,
    stroke: COLORS.planeEdge,
    alpha: FULL_ALPHA,
  });
  const line = (text: string, row: number, size = 12) => {
    scene.ops.push({
      kind: "text",
      x: x + 16,
      y: y + 28 + row * 20,
      text,
      size,
      fill: COLORS.label,
      alpha: FULL_ALPHA,
    });
  };
  line(`${compare.layer_a} vs ${compare.layer_b}`, 0, 14);
  line(`shared nodes: ${compare.shared_node_count} (J = ${formatNumber(compare.j_node)})`, 1);
  line(`shared links: ${compare.shared_edge_count} (J = ${formatNumber(compare.j_edge)})`, 2);
  let row = 3;
  if (compare.j_node_per_set) {
    for (const [label, value] of Object.entries(compare.j_node_per_set)) {
      line(`J(${label}): ${formatNumber(value)}`, row);
      row += 1;
    }
  }

  // grouped histogram bars, one block per degree column
  let top = y + 28 + row * 20 + 10;
  for (const [column, hist] of Object.entries(compare.degree_histograms)) {
    if (hist.layer_a.length === 0) continue;
    line(column, (top - y - 28) / 20, 11);
    top += 12;
    const bins = hist.layer_a.length;
    const barW = (w - 40) / bins / 2;
    const maxCount = Math.max(...hist.layer_a, ...hist.layer_b, 1);
    const chartH = 60;
    for (let i = 0; i < bins; i++) {
      const ax = x + 16 + i * barW * 2;
      const ha = (hist.layer_a[i] / maxCount) * chartH;
      const hb = (hist.layer_b[i] / maxCount) * chartH;
      scene.ops.push({ kind: "rect", x: ax, y: top + chartH - ha, w: barW, h: ha, fill: COLORS.node, alpha: 0.9 });
      scene.ops.push({ kind: "rect", x: ax + barW, y: top + chartH - hb, w: barW, h: hb, fill: COLORS.accent, alpha: 0.9 });
    }
    top += chartH + 18;
    if (top > y + h - 80) break; // panel full
  }
}
