/** Node styling shared by the graph modes: size and color resolved from
 * the metrics bundle (or node attributes) according to the legend choice. */

import { categoricalScale, CategoricalScale, legendFor, LegendInfo, sequentialScale, SequentialScale } from "../color.js";
import { COLORS } from "../scene.js";
import { LegendState } from "../state.js";
import { MetricsBundle, NetworkDocument } from "../types.js";

export const MIN_RADIUS = 3;
export const MAX_RADIUS = 11;

export interface NodeStyles {
  radius(layerId: string, nodeId: string): number;
  color(layerId: string, nodeId: string): string;
  legend: LegendInfo | null;
}

export function constantStyles(): NodeStyles {
  return {
    radius: () => 5,
    color: () => COLORS.node,
    legend: null,
  };
}

/** A requested metric column, tolerant of direction suffixes: "k_intra"
 * on a directed network resolves to "k_intra_out". */
export function resolveColumn(rows: Record<string, unknown>[], wanted: string): string | null {
  if (rows.length === 0) return null;
  const keys = Object.keys(rows[0]);
  if (keys.includes(wanted)) return wanted;
  for (const suffix of ["_out", "_in"]) {
    if (keys.includes(wanted + suffix)) return wanted + suffix;
  }
  return null;
}

export function stateKey(layerId: string, nodeId: string): string {
  return `${layerId}\u0000${nodeId}`;
}

/** Styles driven by per-state-node metric columns; "node_type" colors
 * categorically from the node table instead. */
export function stylesFromBundle(
  bundle: MetricsBundle,
  legend: LegendState,
  doc: NetworkDocument | null,
): NodeStyles {
  const rows = bundle.state_nodes;
  const sizeColumn = resolveColumn(rows, legend.sizeBy);
  const colorColumn = legend.colorBy === "node_type" ? null : resolveColumn(rows, legend.colorBy);

  const sizeByKey = new Map<string, number>();
  const colorValueByKey = new Map<string, number>();
  let sizeLo = Infinity;
  let sizeHi = -Infinity;
  for (const row of rows) {
    const key = stateKey(String(row.layer_id), String(row.node_id));
    if (sizeColumn !== null && typeof row[sizeColumn] === "number") {
      const v = row[sizeColumn] as number;
      sizeByKey.set(key, v);
      sizeLo = Math.min(sizeLo, v);
      sizeHi = Math.max(sizeHi, v);
    }
    if (colorColumn !== null && typeof row[colorColumn] === "number") {
      colorValueByKey.set(key, row[colorColumn] as number);
    }
  }

  let scale: SequentialScale | CategoricalScale | null = null;
  let typeByNode: Map<string, string> | null = null;
  if (legend.colorBy === "node_type" && doc !== null) {
    typeByNode = new Map(doc.nodes.map((n) => [n.node_id, n.node_type ?? ""]));
    scale = categoricalScale([...typeByNode.values()]);
  } else if (colorColumn !== null) {
    scale = sequentialScale([...colorValueByKey.values()]);
  }

  const sizeSpan = sizeHi - sizeLo;
  return {
    radius(layerId: string, nodeId: string): number {
      const v = sizeByKey.get(stateKey(layerId, nodeId));
      if (v === undefined || sizeSpan <= 0) return (MIN_RADIUS + MAX_RADIUS) / 2;
      // sqrt so area, not radius, tracks the metric
      const t = Math.sqrt((v - sizeLo) / sizeSpan);
      return MIN_RADIUS + t * (MAX_RADIUS - MIN_RADIUS);
    },
    color(layerId: string, nodeId: string): string {
      if (scale === null) return COLORS.node;
      if (scale.kind === "categorical") {
        return scale.color(typeByNode?.get(nodeId) ?? "");
      }
      const v = colorValueByKey.get(stateKey(layerId, nodeId));
      return v === undefined ? COLORS.node : scale.color(v);
    },
    legend:
      scale === null
        ? null
        : legendFor(scale, legend.colorBy === "node_type" ? "node type" : (colorColumn ?? legend.colorBy)),
  };
}
