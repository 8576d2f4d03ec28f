/** Small-multiples view: one panel per visible layer on a responsive
 * grid, every panel drawing the same shared layout so a node occupies
 * the same spot in each panel. */

import { gridCells, unitTransform } from "../geometry.js";
import { alphaFor, COLORS, emptyScene, FULL_ALPHA, placeholderScene, Scene } from "../scene.js";
import { ModeState } from "../state.js";
import { FilteredView, UnionLayout } from "../types.js";
import { constantStyles, NodeStyles } from "./styles.js";

const PANEL_PADDING = 10;
const TITLE_HEIGHT = 18;

export function buildGridScene(
  view: FilteredView,
  union: UnionLayout | null,
  layerIds: string[],
  state: ModeState,
  width: number,
  height: number,
  styles: NodeStyles = constantStyles(),
): Scene {
  if (union === null) {
    return placeholderScene(width, height, "shared layout unavailable");
  }
  const shown = layerIds.filter(
    (lid) => state.filters.visible_layers === null || state.filters.visible_layers.includes(lid),
  );
  if (shown.length === 0) {
    return placeholderScene(width, height, "no visible layers");
  }

  const scene = emptyScene(width, height);
  const cells = gridCells(shown.length, width, height);

  const statesByLayer = new Map<string, FilteredView["state_nodes"]>();
  for (const s of view.state_nodes) {
    let bucket = statesByLayer.get(s.layer_id);
    if (!bucket) statesByLayer.set(s.layer_id, (bucket = []));
    bucket.push(s);
  }
  const edgesByLayer = new Map<string, FilteredView["intralayer_edges"]>();
  for (const e of view.intralayer_edges) {
    let bucket = edgesByLayer.get(e.layer_from);
    if (!bucket) edgesByLayer.set(e.layer_from, (bucket = []));
    bucket.push(e);
  }

  shown.forEach((layerId, i) => {
    const cell = cells[i];
    const inner = {
      width: cell.w - 2 * PANEL_PADDING,
      height: cell.h - TITLE_HEIGHT - 2 * PANEL_PADDING,
      margin: 8,
    };
    const toLocal = unitTransform(inner);
    const toPx = (x: number, y: number): [number, number] => {
      const [lx, ly] = toLocal(x, y);
      return [cell.x + PANEL_PADDING + lx, cell.y + TITLE_HEIGHT + PANEL_PADDING + ly];
    };

    scene.ops.push({
      kind: "rect",
      x: cell.x + 3,
      y: cell.y + 3,
      w: cell.w - 6,
      h: cell.h - 6,
      fill: COLORS.panel,
      stroke: COLORS.planeEdge,
      alpha: FULL_ALPHA,
    });
    scene.ops.push({
      kind: "text",
      x: cell.x + PANEL_PADDING,
      y: cell.y + TITLE_HEIGHT - 3,
      text: layerId,
      size: 12,
      fill: COLORS.label,
      alpha: FULL_ALPHA,
    });

    for (const e of edgesByLayer.get(layerId) ?? []) {
      const a = union.positions[e.node_from];
      const b = union.positions[e.node_to];
      if (!a || !b) continue;
      const [x1, y1] = toPx(a[0], a[1]);
      const [x2, y2] = toPx(b[0], b[1]);
      scene.ops.push({
        kind: "line",
        x1,
        y1,
        x2,
        y2,
        width: 1,
        stroke: COLORS.intraEdge,
        alpha: alphaFor(e.dimmed),
      });
    }
    for (const s of statesByLayer.get(layerId) ?? []) {
      const p = union.positions[s.node_id];
      if (!p) continue;
      const [x, y] = toPx(p[0], p[1]);
      scene.ops.push({
        kind: "circle",
        x,
        y,
        r: Math.min(styles.radius(s.layer_id, s.node_id), 7),
        fill: styles.color(s.layer_id, s.node_id),
        stroke: COLORS.nodeStroke,
        alpha: alphaFor(s.dimmed),
        tag: `state:${s.layer_id}:${s.node_id}`,
      });
    }
  });
  return scene;
}
