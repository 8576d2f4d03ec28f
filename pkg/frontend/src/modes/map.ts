/** Geographic view: layer bubbles pinned to their map positions over a
 * plain offline base (solid ocean, graticule lines); any popped-out
 * layers get floating micro-graph panels along the right edge. */

import { unitTransform } from "../geometry.js";
import { COLORS, emptyScene, FULL_ALPHA, placeholderScene, Scene } from "../scene.js";
import { ModeState } from "../state.js";
import { FilteredView, LayerGraphLayout, UnionLayout } from "../types.js";
import { contentsByLayer, drawBubbleGraph, drawMicroGraph } from "./bubbles.js";

const OCEAN = "#0d2233";
const GRATICULE = "#1d3a50";
const POPOUT_W = 210;
const POPOUT_H = 170;

export function buildMapScene(
  geo: LayerGraphLayout | null,
  view: FilteredView,
  union: UnionLayout | null,
  state: ModeState,
  width: number,
  height: number,
): Scene {
  if (geo === null) {
    return placeholderScene(width, height, "no layer coordinates — map view needs latitude/longitude on every layer");
  }
  const scene = emptyScene(width, height);
  scene.ops.push({ kind: "rect", x: 0, y: 0, w: width, h: height, fill: OCEAN, alpha: FULL_ALPHA });
  const steps = 8;
  for (let i = 1; i < steps; i++) {
    const gx = (width * i) / steps;
    const gy = (height * i) / steps;
    scene.ops.push({ kind: "line", x1: gx, y1: 0, x2: gx, y2: height, width: 1, stroke: GRATICULE, alpha: 0.6 });
    scene.ops.push({ kind: "line", x1: 0, y1: gy, x2: width, y2: gy, width: 1, stroke: GRATICULE, alpha: 0.6 });
  }

  const toPx = unitTransform({ width, height, margin: 60 });
  const highlighted = new Set(state.poppedOut);
  drawBubbleGraph(scene, geo, view, union, toPx, Math.min(width, height) / 9, highlighted);

  // floating panels for popped-out layers
  const contents = contentsByLayer(view);
  state.poppedOut.forEach((layerId, i) => {
    const px = width - POPOUT_W - 12;
    const py = 12 + i * (POPOUT_H + 10);
    if (py + POPOUT_H > height) return;
    scene.ops.push({
      kind: "rect",
      x: px,
      y: py,
      w: POPOUT_W,
      h: POPOUT_H,
      fill: COLORS.panel,
      stroke: COLORS.accent,
      alpha: 0.95,
    });
    scene.ops.push({
      kind: "text",
      x: px + 10,
      y: py + 18,
      text: layerId,
      size: 12,
      fill: COLORS.label,
      alpha: FULL_ALPHA,
    });
    const entry = contents.get(layerId);
    if (entry && union) {
      drawMicroGraph(scene, entry, union, px + POPOUT_W / 2, py + 18 + (POPOUT_H - 28) / 2, (POPOUT_H - 40) / 2);
    }
  });
  return scene;
}
