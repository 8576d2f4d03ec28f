/** Replays a Scene onto a 2D context.  The scale factor multiplies
 * every coordinate, width, and font size, so raster export at higher
 * resolution re-renders the identical op list instead of resampling
 * pixels. */

import { Scene } from "./scene.js";

/** The slice of CanvasRenderingContext2D the painter needs; tests
 * substitute a recording implementation. */
export interface CanvasLike {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  globalAlpha: number;
  font: string;
  textAlign: CanvasTextAlign;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  rect(x: number, y: number, w: number, h: number): void;
  arc(x: number, y: number, r: number, startAngle: number, endAngle: number): void;
  fill(): void;
  stroke(): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
  setLineDash(segments: number[]): void;
}

export function paint(ctx: CanvasLike, scene: Scene, scale = 1): void {
  const k = scale;
  ctx.setLineDash([]);
  ctx.globalAlpha = 1;
  ctx.fillStyle = scene.background;
  ctx.fillRect(0, 0, scene.width * k, scene.height * k);

  for (const op of scene.ops) {
    ctx.globalAlpha = op.alpha;
    switch (op.kind) {
      case "rect": {
        ctx.beginPath();
        ctx.rect(op.x * k, op.y * k, op.w * k, op.h * k);
        if (op.fill) {
          ctx.fillStyle = op.fill;
          ctx.fill();
        }
        if (op.stroke) {
          ctx.strokeStyle = op.stroke;
          ctx.lineWidth = k;
          ctx.stroke();
        }
        break;
      }
      case "circle": {
        ctx.beginPath();
        ctx.arc(op.x * k, op.y * k, op.r * k, 0, 2 * Math.PI);
        ctx.fillStyle = op.fill;
        ctx.fill();
        if (op.stroke) {
          ctx.strokeStyle = op.stroke;
          ctx.lineWidth = k;
          ctx.stroke();
        }
        break;
      }
      case "line": {
        ctx.setLineDash(op.dash ? op.dash.map((d) => d * k) : []);
        ctx.beginPath();
        ctx.moveTo(op.x1 * k, op.y1 * k);
        ctx.lineTo(op.x2 * k, op.y2 * k);
        ctx.strokeStyle = op.stroke;
        ctx.lineWidth = op.width * k;
        ctx.stroke();
        ctx.setLineDash([]);
        break;
      }
      case "polygon": {
        if (op.points.length === 0) break;
        ctx.beginPath();
        ctx.moveTo(op.points[0][0] * k, op.points[0][1] * k);
        for (const [x, y] of op.points.slice(1)) ctx.lineTo(x * k, y * k);
        ctx.closePath();
        if (op.fill) {
          ctx.fillStyle = op.fill;
          ctx.fill();
        }
        if (op.stroke) {
          ctx.strokeStyle = op.stroke;
          ctx.lineWidth = k;
          ctx.stroke();
        }
        break;
      }
      case "text": {
        ctx.font = `${op.size * k}px system-ui, sans-serif`;
        ctx.textAlign = op.align ?? "left";
        ctx.fillStyle = op.fill;
        ctx.fillText(op.text, op.x * k, op.y * k);
        break;
      }
    }
  }
  ctx.globalAlpha = 1;
}
