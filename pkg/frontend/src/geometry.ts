/** Shared display geometry: the oblique stack transform the engine's
 * stacked coordinates follow, and the responsive grid arithmetic. */

import { Point, StackProjection } from "./types.js";

export interface GridCell {
  x: number;
  y: number;
  w: number;
  h: number;
}

/** Row-major grid of ceil(sqrt(n)) columns filling the viewport. */
export function gridCells(count: number, width: number, height: number): GridCell[] {
  if (count < 0) throw new Error("layer count must be non-negative");
  if (count === 0) return [];
  const columns = Math.ceil(Math.sqrt(count));
  const rows = Math.ceil(count / columns);
  const w = width / columns;
  const h = height / rows;
  const cells: GridCell[] = [];
  for (let i = 0; i < count; i++) {
    cells.push({ x: (i % columns) * w, y: Math.floor(i / columns) * h, w, h });
  }
  return cells;
}

/** The four corners of a layer plane under the engine's oblique
 * projection: screen = (x*S + i*shear_x, y*S*c + i*shear_y). */
export function planeCorners(params: StackProjection["params"], index: number): Point[] {
  const { scale, compression, shear_x, shear_y } = params;
  const corner = (x: number, y: number): Point => [
    x * scale + index * shear_x,
    y * scale * compression + index * shear_y,
  ];
  return [corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)];
}

/** Bounding box of every plane corner and node of the projection, used
 * to fit the whole stack into the canvas. */
export function stackBounds(projection: StackProjection): { minX: number; minY: number; maxX: number; maxY: number } {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  const extend = (x: number, y: number) => {
    minX = Math.min(minX, x);
    minY = Math.min(minY, y);
    maxX = Math.max(maxX, x);
    maxY = Math.max(maxY, y);
  };
  for (const layer of projection.layers) {
    for (const [x, y] of planeCorners(projection.params, layer.index)) extend(x, y);
  }
  for (const p of projection.positions) extend(p.x, p.y);
  if (!Number.isFinite(minX)) {
    return { minX: 0, minY: 0, maxX: 1, maxY: 1 };
  }
  return { minX, minY, maxX, maxY };
}

export interface Viewport {
  width: number;
  height: number;
  margin: number;
}

/** Map layout coordinates into pixels, preserving aspect ratio. */
export function fitTransform(
  bounds: { minX: number; minY: number; maxX: number; maxY: number },
  viewport: Viewport,
): (x: number, y: number) => Point {
  const spanX = Math.max(bounds.maxX - bounds.minX, 1e-9);
  const spanY = Math.max(bounds.maxY - bounds.minY, 1e-9);
  const usableW = viewport.width - 2 * viewport.margin;
  const usableH = viewport.height - 2 * viewport.margin;
  const s = Math.min(usableW / spanX, usableH / spanY);
  const offsetX = viewport.margin + (usableW - spanX * s) / 2;
  const offsetY = viewport.margin + (usableH - spanY * s) / 2;
  return (x: number, y: number): Point => [
    offsetX + (x - bounds.minX) * s,
    offsetY + (y - bounds.minY) * s,
  ];
}

export function unitTransform(viewport: Viewport): (x: number, y: number) => Point {
  return fitTransform({ minX: 0, minY: 0, maxX: 1, maxY: 1 }, viewport);
}
