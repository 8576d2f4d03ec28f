/** Statistics view: small-multiple charts straight off the metrics
 * payload — per-layer bars, degree and participation histograms, and
 * the pairwise overlap matrix. */

import { formatNumber, sequentialScale } from "../color.js";
import { gridCells } from "../geometry.js";
import { COLORS, emptyScene, FULL_ALPHA, placeholderScene, Scene } from "../scene.js";
import { Histogram, MetricsBundle } from "../types.js";

interface Frame {
  x: number;
  y: number;
  w: number;
  h: number;
}

function panelFrame(scene: Scene, cell: Frame, title: string): Frame {
  scene.ops.push({
    kind: "rect",
    x: cell.x + 4,
    y: cell.y + 4,
    w: cell.w - 8,
    h: cell.h - 8,
    fill: COLORS.panel,
    stroke: COLORS.planeEdge,
    alpha: FULL_ALPHA,
  });
  scene.ops.push({
    kind: "text",
    x: cell.x + 14,
    y: cell.y + 22,
    text: title,
    size: 13,
    fill: COLORS.label,
    alpha: FULL_ALPHA,
  });
  return { x: cell.x + 14, y: cell.y + 32, w: cell.w - 28, h: cell.h - 46 };
}

function drawBars(scene: Scene, frame: Frame, labels: string[], values: number[], color: string): void {
  const max = values.reduce((m, v) => Math.max(m, v), 0);
  if (labels.length === 0 || max <= 0) return;
  const step = frame.w / labels.length;
  const barW = Math.min(step * 0.7, 48);
  values.forEach((v, i) => {
    const h = (v / max) * (frame.h - 18);
    scene.ops.push({
      kind: "rect",
      x: frame.x + i * step + (step - barW) / 2,
      y: frame.y + frame.h - 18 - h,
      w: barW,
      h,
      fill: color,
      alpha: 0.9,
    });
    scene.ops.push({
      kind: "text",
      x: frame.x + i * step + step / 2,
      y: frame.y + frame.h - 4,
      text: labels[i],
      size: 9,
      fill: COLORS.label,
      alpha: 0.9,
      align: "center",
    });
  });
}

function drawHistogram(scene: Scene, frame: Frame, hist: Histogram, color: string): void {
  const counts = hist.counts;
  const max = counts.reduce((m, v) => Math.max(m, v), 0);
  if (counts.length === 0 || max <= 0) {
    scene.ops.push({
      kind: "text",
      x: frame.x,
      y: frame.y + 16,
      text: "no values",
      size: 11,
      fill: COLORS.label,
      alpha: 0.7,
    });
    return;
  }
  const step = frame.w / counts.length;
  counts.forEach((c, i) => {
    const h = (c / max) * (frame.h - 18);
    scene.ops.push({
      kind: "rect",
      x: frame.x + i * step + 1,
      y: frame.y + frame.h - 18 - h,
      w: Math.max(step - 2, 1),
      h,
      fill: color,
      alpha: 0.9,
    });
  });
  const lo = hist.edges[0];
  const hi = hist.edges[hist.edges.length - 1];
  scene.ops.push({
    kind: "text",
    x: frame.x,
    y: frame.y + frame.h - 4,
    text: formatNumber(lo),
    size: 9,
    fill: COLORS.label,
    alpha: 0.9,
  });
  scene.ops.push({
    kind: "text",
    x: frame.x + frame.w - 30,
    y: frame.y + frame.h - 4,
    text: formatNumber(hi),
    size: 9,
    fill: COLORS.label,
    alpha: 0.9,
  });
}

function drawMatrix(scene: Scene, frame: Frame, layerIds: string[], matrix: (number | null)[][]): void {
  const n = layerIds.length;
  if (n === 0) return;
  const size = Math.min(frame.w, frame.h - 10) / n;
  const values = matrix.flat().filter((v): v is number => v !== null);
  const scale = sequentialScale(values.length > 0 ? values : [0, 1]);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const v = matrix[i][j];
      scene.ops.push({
        kind: "rect",
        x: frame.x + j * size,
        y: frame.y + i * size,
        w: size - 1,
        h: size - 1,
        fill: v === null ? COLORS.background : scale.color(v),
        alpha: FULL_ALPHA,
      });
    }
    scene.ops.push({
      kind: "text",
      x: frame.x + n * size + 6,
      y: frame.y + i * size + size / 2 + 3,
      text: layerIds[i],
      size: 9,
      fill: COLORS.label,
      alpha: 0.9,
    });
  }
}

/** First degree-family distribution present, for the headline panel. */
export function primaryDistribution(bundle: MetricsBundle): [string, Histogram] | null {
  for (const column of ["k_intra", "k_intra_out", "k_intra_in"]) {
    const hist = bundle.distributions[column];
    if (hist) return [column, hist];
  }
  const first = Object.entries(bundle.distributions)[0];
  return first ?? null;
}

export function buildDashboardScene(bundle: MetricsBundle | null, width: number, height: number): Scene {
  if (bundle === null) {
    return placeholderScene(width, height, "metrics unavailable");
  }
  const scene = emptyScene(width, height);
  const cells = gridCells(6, width, height);
  const layerIds = bundle.layers.map((l) => l.layer_id);

  let frame = panelFrame(scene, cells[0], "nodes per layer");
  drawBars(scene, frame, layerIds, bundle.layers.map((l) => l.node_count), COLORS.node);

  frame = panelFrame(scene, cells[1], "links per layer");
  drawBars(scene, frame, layerIds, bundle.layers.map((l) => l.edge_count), COLORS.interEdge);

  const avg = bundle.average_density;
  frame = panelFrame(
    scene,
    cells[2],
    `density by layer (avg ${formatNumber(avg.value)}${avg.excluded_layer_count > 0 ? `, ${avg.excluded_layer_count} excluded` : ""})`,
  );
  drawBars(scene, frame, layerIds, bundle.layers.map((l) => l.density ?? 0), COLORS.accent);

  const primary = primaryDistribution(bundle);
  frame = panelFrame(scene, cells[3], primary ? `distribution of ${primary[0]}` : "degree distribution");
  if (primary) drawHistogram(scene, frame, primary[1], COLORS.node);

  frame = panelFrame(scene, cells[4], "layers per node");
  const multiplexity = bundle.distributions["multiplexity"];
  if (multiplexity) drawHistogram(scene, frame, multiplexity, COLORS.accent);

  frame = panelFrame(scene, cells[5], "node overlap between layers");
  drawMatrix(scene, frame, bundle.pairwise.layer_ids, bundle.pairwise.j_node);

  return scene;
}
