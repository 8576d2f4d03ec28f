/** Raster export: the current scene re-painted at double resolution
 * onto a fresh canvas, then encoded as a PNG data URL.  The canvas
 * factory is injected so export logic is testable without a browser. */

import { CanvasLike, paint } from "./painter.js";
import { Scene } from "./scene.js";

export const EXPORT_SCALE = 2;

export interface ExportCanvas {
  width: number;
  height: number;
  getContext(kind: "2d"): CanvasLike | null;
  toDataURL(type?: string): string;
}

export type CanvasFactory = (width: number, height: number) => ExportCanvas;

export function renderPng(scene: Scene, factory: CanvasFactory, scale = EXPORT_SCALE): string {
  const canvas = factory(scene.width * scale, scene.height * scale);
  const ctx = canvas.getContext("2d");
  if (ctx === null) throw new Error("2d context unavailable");
  paint(ctx, scene, scale);
  return canvas.toDataURL("image/png");
}

export function downloadName(mode: string): string {
  const stamp = new Date().toISOString().replace(/[:.]/g, "-").slice(0, 19);
  return `network-${mode}-${stamp}.png`;
}
