/**
 * Draw-op interpreter for a Canvas 2D context. The subset interface keeps
 * tests honest: a recording stub implements it without a browser.
 */

import type { DrawOp } from "./scene";

export interface Canvas2DLike {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  quadraticCurveTo(cx: number, cy: number, x: number, y: number): void;
  stroke(): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
  setLineDash(segments: number[]): void;
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  textAlign: CanvasTextAlign;
  globalAlpha: number;
}

export function drawScene(ctx: Canvas2DLike, scene: DrawOp[]): void {
  for (const op of scene) {
    switch (op.op) {
      case "clear":
        ctx.clearRect(0, 0, op.width, op.height);
        break;
      case "edge": {
        ctx.strokeStyle = "#444";
        ctx.lineWidth = 1.5;
        ctx.setLineDash(op.kind === "forward-down" ? [5, 3] : []);
        ctx.beginPath();
        const [start, ...rest] = op.points;
        ctx.moveTo(start[0], start[1]);
        if (op.shape === "straight") {
          ctx.lineTo(rest[0][0], rest[0][1]);
        } else {
          ctx.quadraticCurveTo(rest[0][0], rest[0][1], rest[1][0], rest[1][1]);
        }
        ctx.stroke();
        ctx.setLineDash([]);
        break;
      }
      case "node":
        ctx.globalAlpha = 0.55;
        ctx.fillStyle = op.fill;
        ctx.fillRect(op.x, op.y, op.w, op.h);
        ctx.globalAlpha = 1;
        ctx.strokeStyle = op.selected ? "#0b5fff" : "#222";
        ctx.lineWidth = op.selected ? 3 : op.collapsed ? 2 : 1;
        ctx.setLineDash(op.collapsed ? [4, 2] : []);
        ctx.strokeRect(op.x, op.y, op.w, op.h);
        ctx.setLineDash([]);
        break;
      case "label":
        ctx.fillStyle = "#111";
        ctx.font = `${op.size}px monospace`;
        ctx.textAlign = "center";
        ctx.fillText(op.text, op.x, op.y + op.size / 3);
        break;
      case "badge":
        ctx.fillStyle = "#666";
        ctx.font = `${op.size}px monospace`;
        ctx.textAlign = "left";
        ctx.fillText(op.text, op.x, op.y);
        break;
    }
  }
}
