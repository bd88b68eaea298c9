/**
 * Pure scene construction: layout export + viewport -> flat draw-op list.
 *
 * Positions are taken verbatim from the export and only run through the
 * viewport transform (pan + zoom). The op list is deterministic, so a
 * byte-identical export at a fixed viewport yields an identical scene,
 * which is what the screenshot tests assert.
 */

import type { LayoutExport } from "./types";

/** Screen pixels per layout unit at zoom 1. */
export const UNIT_PX = 80;
/** Node cell size in layout units; display geometry only, never position. */
export const NODE_W = 0.6;
export const NODE_H = 0.4;

export interface Viewport {
  /** Layout coordinates of the canvas's top-left corner. */
  x: number;
  y: number;
  zoom: number;
}

export interface CanvasSize {
  width: number;
  height: number;
}

export type DrawOp =
  | { op: "clear"; width: number; height: number }
  | {
      op: "edge";
      shape: "straight" | "curve";
      kind: string;
      points: [number, number][];
    }
  | {
      op: "node";
      id: number;
      x: number;
      y: number;
      w: number;
      h: number;
      fill: string;
      collapsed: boolean;
      selected: boolean;
    }
  | { op: "label"; x: number; y: number; text: string; size: number }
  | { op: "badge"; x: number; y: number; text: string; size: number };

const LABEL_MAX = 24;

export function toScreen(vp: Viewport, x: number, y: number): [number, number] {
  return [(x - vp.x) * UNIT_PX * vp.zoom, (y - vp.y) * UNIT_PX * vp.zoom];
}

export function toLayout(vp: Viewport, sx: number, sy: number): [number, number] {
  return [sx / (UNIT_PX * vp.zoom) + vp.x, sy / (UNIT_PX * vp.zoom) + vp.y];
}

export interface Bounds {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

/** Bounding box of the drawing in layout units, node extents included. */
export function layoutBounds(layout: Pick<LayoutExport, "nodes" | "edges">): Bounds {
  let minX = 0;
  let minY = 0;
  let maxX = 0;
  let maxY = 0;
  for (const n of layout.nodes) {
    minX = Math.min(minX, n.x - NODE_W);
    minY = Math.min(minY, n.y - NODE_H);
    maxX = Math.max(maxX, n.x + NODE_W);
    maxY = Math.max(maxY, n.y + NODE_H);
  }
  for (const e of layout.edges) {
    for (const [px, py] of e.shape.points) {
      minX = Math.min(minX, px);
      minY = Math.min(minY, py);
      maxX = Math.max(maxX, px + NODE_W);
      maxY = Math.max(maxY, py + NODE_H);
    }
  }
  return { minX, minY, maxX, maxY };
}

export function buildScene(
  layout: Pick<LayoutExport, "nodes" | "edges">,
  vp: Viewport,
  selection: ReadonlySet<number>,
  canvas: CanvasSize,
): DrawOp[] {
  const ops: DrawOp[] = [{ op: "clear", width: canvas.width, height: canvas.height }];
  const scale = UNIT_PX * vp.zoom;

  for (const e of layout.edges) {
    ops.push({
      op: "edge",
      shape: e.shape.type,
      kind: e.kind,
      points: e.shape.points.map(([px, py]) => toScreen(vp, px, py)),
    });
  }

  for (const n of layout.nodes) {
    const [cx, cy] = toScreen(vp, n.x, n.y);
    const w = NODE_W * scale;
    const h = NODE_H * scale;
    ops.push({
      op: "node",
      id: n.id,
      x: cx - w / 2,
      y: cy - h / 2,
      w,
      h,
      fill: n.color,
      collapsed: n.collapsed,
      selected: selection.has(n.id),
    });
    const label = n.label.length > LABEL_MAX ? n.label.slice(0, LABEL_MAX - 3) + "..." : n.label;
    ops.push({ op: "label", x: cx, y: cy, text: label, size: 10 * vp.zoom });
    ops.push({
      op: "badge",
      x: cx - w / 2,
      y: cy - h / 2 - 2,
      text: String(n.sfr),
      size: 8 * vp.zoom,
    });
  }
  return ops;
}

/** Hit test in screen coordinates against the node ops of a scene. */
export function nodeAt(scene: DrawOp[], sx: number, sy: number): number | null {
  for (let i = scene.length - 1; i >= 0; i--) {
    const op = scene[i];
    if (op.op === "node" && sx >= op.x && sx <= op.x + op.w && sy >= op.y && sy <= op.y + op.h) {
      return op.id;
    }
  }
  return null;
}

export function countEdges(scene: DrawOp[]): { straight: number; curve: number } {
  let straight = 0;
  let curve = 0;
  for (const op of scene) {
    if (op.op === "edge") {
      if (op.shape === "straight") straight++;
      else curve++;
    }
  }
  return { straight, curve };
}
