/** Shared UI state: one active mode, selection and filters reused by
 * every mode.  All transitions are pure so cross-mode persistence is a
 * testable property instead of an accident of wiring.
 */

export const MODES = ["network", "map", "layer", "grid", "meta", "dashboard", "data"] as const;
export type Mode = (typeof MODES)[number];

export type Selection =
  | { node_id: string }
  | { edge: { layer_from: string; node_from: string; layer_to: string; node_to: string } }
  | null;

export interface FilterState {
  min_weight_intra: number;
  min_weight_inter: number;
  visible_layers: string[] | null;
  node_query: string;
  show_interlayer: boolean;
}

export interface LegendState {
  colorBy: string; // metric column or attribute name
  sizeBy: string;
}

export interface ModeState {
  mode: Mode;
  filters: FilterState;
  selection: Selection;
  legend: LegendState;
  metaMode: "union" | "count" | "sum";
  metaThreshold: number;
  layoutSeed: number;
  poppedOut: string[]; // map mode floating panels
  comparePair: [string, string] | null; // layer view Cmd/Ctrl+click pair
  camera: Partial<Record<Mode, { x: number; y: number; zoom: number }>>;
}

export function initialState(): ModeState {
  return {
    mode: "network",
    filters: {
      min_weight_intra: 0,
      min_weight_inter: 0,
      visible_layers: null,
      node_query: "",
      show_interlayer: false,
    },
    selection: null,
    legend: { colorBy: "s_intra", sizeBy: "k_intra" },
    metaMode: "union",
    metaThreshold: 0,
    layoutSeed: 0,
    poppedOut: [],
    comparePair: null,
    camera: {},
  };
}

/** Mode switches keep selection and filters: they are global state. */
export function setMode(state: ModeState, mode: Mode): ModeState {
  return { ...state, mode };
}

export function setSelection(state: ModeState, selection: Selection): ModeState {
  return { ...state, selection };
}

export function setFilters(state: ModeState, changes: Partial<FilterState>): ModeState {
  return { ...state, filters: { ...state.filters, ...changes } };
}

export function setCamera(state: ModeState, camera: { x: number; y: number; zoom: number }): ModeState {
  return { ...state, camera: { ...state.camera, [state.mode]: camera } };
}

/** view_state payload for POST /api/view and the saved session. */
export function viewStateBody(state: ModeState): Record<string, unknown> {
  return {
    active_mode: state.mode,
    filters: { ...state.filters },
    selection: state.selection,
    meta_mode: state.metaMode,
    layout: { seed: state.layoutSeed },
  };
}

/** Latest-wins request gate: at most one logical request per topic; a
 * response is delivered only if no newer request was issued since. */
export class LatestWins {
  private stamps = new Map<string, number>();

  issue(topic: string): number {
    const stamp = (this.stamps.get(topic) ?? 0) + 1;
    this.stamps.set(topic, stamp);
    return stamp;
  }

  isCurrent(topic: string, stamp: number): boolean {
    return this.stamps.get(topic) === stamp;
  }
}
