/** Immediate-mode draw lists.
 *
 * Every mode builder is a pure function from engine payloads and UI
 * state to a Scene; the painter replays the list onto a 2D context.
 * Keeping the ops as plain data makes frames comparable in tests and
 * lets raster export re-render the identical list at another scale.
 */

export type DrawOp =
  | { kind: "rect"; x: number; y: number; w: number; h: number; fill?: string; stroke?: string; alpha: number }
  | { kind: "circle"; x: number; y: number; r: number; fill: string; stroke?: string; alpha: number; tag?: string }
  | { kind: "line"; x1: number; y1: number; x2: number; y2: number; width: number; stroke: string; alpha: number; dash?: number[] }
  | { kind: "polygon"; points: [number, number][]; fill?: string; stroke?: string; alpha: number }
  | { kind: "text"; x: number; y: number; text: string; size: number; fill: string; alpha: number; align?: CanvasTextAlign };

export interface Scene {
  width: number;
  height: number;
  background: string;
  ops: DrawOp[];
}

/** Opacity applied to everything outside the current selection. */
export const DIM_ALPHA = 0.15;
export const FULL_ALPHA = 1.0;

export const COLORS = {
  background: "#101418",
  plane: "#1b2330",
  planeEdge: "#2e3d52",
  node: "#7fb2e5",
  nodeStroke: "#d7e7f7",
  intraEdge: "#8fa6bd",
  interEdge: "#c99a5b",
  label: "#c7d3e0",
  accent: "#e8c268",
  panel: "#161d27",
};

export function alphaFor(dimmed: boolean): number {
  return dimmed ? DIM_ALPHA : FULL_ALPHA;
}

export function emptyScene(width: number, height: number): Scene {
  return { width, height, background: COLORS.background, ops: [] };
}

/** Placeholder frame for modes whose engine payload is unavailable. */
export function placeholderScene(width: number, height: number, message: string): Scene {
  const scene = emptyScene(width, height);
  scene.ops.push({
    kind: "text",
    x: width / 2,
    y: height / 2,
    text: message,
    size: 16,
    fill: COLORS.label,
    alpha: FULL_ALPHA,
    align: "center",
  });
  return scene;
}
