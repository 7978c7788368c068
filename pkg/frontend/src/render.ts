// Canvas rendering and the screen<->data transform.  The transform is pure
// view state; point coordinates stay untouched in data units.

import { colorFor } from "./colors.js";
import type { Editor, Point } from "./state.js";

export class View {
  scale = 60; // pixels per data unit
  offsetX = 0; // canvas px of data origin
  offsetY = 0;

  constructor(width: number, height: number) {
    this.offsetX = width / 2;
    this.offsetY = height / 2;
  }

  toScreen(p: Point): Point {
    return { x: this.offsetX + p.x * this.scale, y: this.offsetY - p.y * this.scale };
  }

  toData(px: number, py: number): Point {
    return { x: (px - this.offsetX) / this.scale, y: (this.offsetY - py) / this.scale };
  }

  zoomAt(px: number, py: number, factor: number): void {
    const before = this.toData(px, py);
    this.scale = Math.max(1e-6, Math.min(1e9, this.scale * factor));
    const after = this.toScreen(before);
    this.offsetX += px - after.x;
    this.offsetY += py - after.y;
  }

  pan(dx: number, dy: number): void {
    this.offsetX += dx;
    this.offsetY += dy;
  }
}

export interface Cursor {
  x: number;
  y: number;
  visible: boolean;
}

export function draw(
  ctx: CanvasRenderingContext2D,
  editor: Editor,
  view: View,
  cursor: Cursor,
  tool: "point" | "brush",
  hover: number,
): void {
  const { width, height } = ctx.canvas;
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, width, height);

  drawGrid(ctx, view, width, height);

  const layer = editor.labellings[editor.activeLayer];
  for (let i = 0; i < editor.points.length; i++) {
    const s = view.toScreen(editor.points[i]);
    ctx.beginPath();
    ctx.arc(s.x, s.y, i === hover ? 7 : 5, 0, Math.PI * 2);
    ctx.fillStyle = colorFor(layer[i]);
    ctx.fill();
    if (i === hover) {
      ctx.strokeStyle = "#333333";
      ctx.lineWidth = 1.5;
      ctx.stroke();
    }
  }

  if (tool === "brush" && cursor.visible) {
    ctx.beginPath();
    ctx.arc(cursor.x, cursor.y, editor.brushRadius, 0, Math.PI * 2);
    ctx.strokeStyle = colorFor(editor.activeLabel);
    ctx.setLineDash([4, 4]);
    ctx.lineWidth = 1.5;
    ctx.stroke();
    ctx.setLineDash([]);
  }
}

function drawGrid(
  ctx: CanvasRenderingContext2D,
  view: View,
  width: number,
  height: number,
): void {
  const step = niceStep(view.scale);
  const x0 = Math.floor(view.toData(0, 0).x / step) * step;
  const y0 = Math.floor(view.toData(0, height).y / step) * step;
  ctx.strokeStyle = "#eeeeee";
  ctx.lineWidth = 1;
  for (let x = x0; view.toScreen({ x, y: 0 }).x < width; x += step) {
    const sx = view.toScreen({ x, y: 0 }).x;
    ctx.beginPath();
    ctx.moveTo(sx, 0);
    ctx.lineTo(sx, height);
    ctx.stroke();
  }
  for (let y = y0; view.toScreen({ x: 0, y }).y > 0; y += step) {
    const sy = view.toScreen({ x: 0, y }).y;
    ctx.beginPath();
    ctx.moveTo(0, sy);
    ctx.lineTo(width, sy);
    ctx.stroke();
  }
  // axes
  ctx.strokeStyle = "#cccccc";
  const origin = view.toScreen({ x: 0, y: 0 });
  ctx.beginPath();
  ctx.moveTo(origin.x, 0);
  ctx.lineTo(origin.x, height);
  ctx.moveTo(0, origin.y);
  ctx.lineTo(width, origin.y);
  ctx.stroke();
}

function niceStep(scale: number): number {
  // aim for grid lines every ~80 px
  const raw = 80 / scale;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= raw) return m * mag;
  }
  return 10 * mag;
}
