/** Wire types for the engine's JSON payloads.
 *
 * Field names mirror the HTTP API exactly; nothing here is computed in
 * the browser, the UI only reshapes these payloads for display.
 */

// -- network document (four-array form) --------------------------------------

export type AttrValue = string | number | boolean | null;

export interface LayerRecord {
  layer_id: string;
  display_name?: string;
  bipartite?: boolean;
  latitude?: number;
  longitude?: number;
  [attr: string]: AttrValue | undefined;
}

export interface NodeRecord {
  node_id: string;
  node_type?: string;
  [attr: string]: AttrValue | undefined;
}

export interface StateNodeRecord {
  layer_id: string;
  node_id: string;
  [attr: string]: AttrValue | undefined;
}

export interface EdgeRecord {
  layer_from: string;
  node_from: string;
  layer_to: string;
  node_to: string;
  weight?: number;
  directed?: boolean;
  [attr: string]: AttrValue | undefined;
}

export interface NetworkDocument {
  directed?: boolean;
  directed_interlayer?: boolean;
  layers: LayerRecord[];
  nodes: NodeRecord[];
  state_nodes: StateNodeRecord[];
  extended: EdgeRecord[];
}

// -- filtered view -----------------------------------------------------------

export interface ViewStateNode {
  layer_id: string;
  node_id: string;
  dimmed: boolean;
}

export interface ViewEdge {
  layer_from: string;
  node_from: string;
  layer_to: string;
  node_to: string;
  weight: number;
  dimmed: boolean;
}

export interface FilteredView {
  state_nodes: ViewStateNode[];
  intralayer_edges: ViewEdge[];
  interlayer_edges: ViewEdge[];
  counts: {
    state_nodes: number;
    intralayer_edges: number;
    interlayer_edges: number;
  };
}

// -- layouts -----------------------------------------------------------------

export type Point = [number, number];

export interface UnionLayout {
  scope: string;
  layout_kind: string;
  positions: Record<string, Point>;
}

export interface StackProjection {
  layers: { index: number; layer_id: string }[];
  params: {
    scale: number;
    compression: number;
    layer_gap: number;
    shear_x: number;
    shear_y: number;
  };
  positions: { layer_id: string; node_id: string; x: number; y: number }[];
}

export interface StackPayload {
  projection: StackProjection;
  union: UnionLayout;
}

export interface LayerGraphEdge {
  layer_a: string;
  layer_b: string;
  shared_node_count: number;
  coupling_weight: number;
}

export interface LayerGraphLayout {
  mode: string;
  positions: Record<string, Point>;
  edges: LayerGraphEdge[];
  jitter_radius?: number;
}

// -- metrics bundle ----------------------------------------------------------

export interface LayerMetricsRow {
  layer_id: string;
  node_count: number;
  edge_count: number;
  density: number | null;
  bipartite: boolean;
}

export interface Histogram {
  edges: number[];
  counts: number[];
}

export interface PairwiseMatrices {
  layer_ids: string[];
  j_node: (number | null)[][];
  j_edge: (number | null)[][];
  j_node_per_set?: Record<string, (number | null)[][]>;
  shared_node_count: number[][];
  shared_edge_count: number[][];
}

export interface MetricsBundle {
  directed: boolean;
  directed_interlayer: boolean;
  layer_count: number;
  node_count: number;
  state_node_count: number;
  layers: LayerMetricsRow[];
  state_nodes: Record<string, string | number | null>[];
  physical_nodes: Record<string, string | number | null>[];
  average_density: { value: number | null; excluded_layer_count: number };
  pairwise: PairwiseMatrices;
  presence_matrix: { layer_ids: string[]; node_ids: string[]; rows: number[][] };
  distributions: Record<string, Histogram>;
}

// -- meta projection ----------------------------------------------------------

export interface MetaNodeRow {
  node_id: string;
  // undirected networks carry the plain pair, directed ones the suffixed four
  k_meta?: number;
  s_meta?: number;
  k_meta_out?: number;
  k_meta_in?: number;
  s_meta_out?: number;
  s_meta_in?: number;
}

export interface MetaEdgeRow {
  node_from: string;
  node_to: string;
  weight: number;
  layers: { layer_id: string; weight: number }[];
}

export interface MetaPayload {
  mode: string;
  directed: boolean;
  nodes: MetaNodeRow[];
  edges: MetaEdgeRow[];
}

// -- comparison ---------------------------------------------------------------

export interface ComparePayload {
  layer_a: string;
  layer_b: string;
  j_node: number | null;
  j_edge: number | null;
  shared_node_count: number;
  shared_edge_count: number;
  shared_nodes: string[];
  shared_edges: [string, string][];
  degree_histograms: Record<string, { edges: number[]; layer_a: number[]; layer_b: number[] }>;
  j_node_per_set?: Record<string, number | null>;
}

// -- validation report (POST /api/network response) ----------------------------

export interface ReportIssue {
  code: string;
  path: string;
  message: string;
}

export interface UploadReport {
  valid: boolean;
  errors: ReportIssue[];
  warnings: ReportIssue[];
  normalized_flags: {
    directed: boolean;
    directed_interlayer: boolean;
    inferred_from: string;
  };
}

// -- session ------------------------------------------------------------------

export interface SessionEnvelope {
  format_version: number;
  network: NetworkDocument;
  view_state: Record<string, unknown>;
}

export interface SessionRestoreResponse {
  restored: boolean;
  view_state: Record<string, unknown>;
  view: FilteredView;
}
