/** Table view: the per-element metric rows as a scrollable, filterable
 * table.  Row assembly is pure so filtering is testable without a DOM. */

import { formatNumber } from "../color.js";
import { COLORS, emptyScene, FULL_ALPHA, placeholderScene, Scene } from "../scene.js";
import { ModeState, Selection } from "../state.js";
import { MetricsBundle } from "../types.js";

export type TableKind = "state_nodes" | "physical_nodes" | "layers";

export interface DataTable {
  kind: TableKind;
  columns: string[];
  rows: Record<string, string | number | boolean | null>[];
}

/** Rows of the chosen table, filtered by the shared node query. */
export function dataRows(bundle: MetricsBundle, kind: TableKind, query: string): DataTable {
  const source: Record<string, string | number | boolean | null>[] =
    kind === "layers" ? bundle.layers.map((l) => ({ ...l })) : bundle[kind].map((r) => ({ ...r }));
  const q = query.trim().toLowerCase();
  const rows =
    q === ""
      ? source
      : source.filter((row) => {
          const id = kind === "layers" ? row.layer_id : row.node_id;
          return String(id).toLowerCase().includes(q);
        });
  const columns = source.length > 0 ? Object.keys(source[0]) : [];
  return { kind, columns, rows };
}

function isSelectedRow(selection: Selection, kind: TableKind, row: Record<string, unknown>): boolean {
  if (selection === null || !("node_id" in selection)) return false;
  if (kind === "layers") return false;
  return row.node_id === selection.node_id;
}

const ROW_HEIGHT = 20;
const HEADER_HEIGHT = 46;

export function buildDataScene(
  bundle: MetricsBundle | null,
  state: ModeState,
  kind: TableKind,
  scrollRow: number,
  width: number,
  height: number,
): Scene {
  if (bundle === null) {
    return placeholderScene(width, height, "metrics unavailable");
  }
  const scene = emptyScene(width, height);
  const table = dataRows(bundle, kind, state.filters.node_query);
  const colW = Math.max(90, (width - 20) / Math.max(table.columns.length, 1));

  scene.ops.push({
    kind: "text",
    x: 12,
    y: 20,
    text: `${kind.replace("_", " ")} · ${table.rows.length} rows${state.filters.node_query ? ` (query: ${state.filters.node_query})` : ""}`,
    size: 13,
    fill: COLORS.label,
    alpha: FULL_ALPHA,
  });
  table.columns.forEach((column, c) => {
    scene.ops.push({
      kind: "text",
      x: 12 + c * colW,
      y: HEADER_HEIGHT - 8,
      text: column,
      size: 11,
      fill: COLORS.accent,
      alpha: FULL_ALPHA,
    });
  });

  const visibleCount = Math.floor((height - HEADER_HEIGHT) / ROW_HEIGHT);
  const start = Math.max(0, Math.min(scrollRow, table.rows.length - 1));
  table.rows.slice(start, start + visibleCount).forEach((row, i) => {
    const y = HEADER_HEIGHT + i * ROW_HEIGHT;
    if (isSelectedRow(state.selection, kind, row)) {
      scene.ops.push({
        kind: "rect",
        x: 6,
        y: y + 4,
        w: width - 12,
        h: ROW_HEIGHT - 2,
        fill: COLORS.plane,
        stroke: COLORS.accent,
        alpha: FULL_ALPHA,
      });
    }
    table.columns.forEach((column, c) => {
      const v = row[column];
      const text =
        typeof v === "number" ? formatNumber(v) : v === null ? "–" : typeof v === "boolean" ? String(v) : String(v);
      scene.ops.push({
        kind: "text",
        x: 12 + c * colW,
        y: y + ROW_HEIGHT - 6,
        text,
        size: 11,
        fill: COLORS.label,
        alpha: FULL_ALPHA,
      });
    });
  });
  return scene;
}
