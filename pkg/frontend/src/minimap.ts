/**
 * Minimap geometry: the full drawing mapped into a small box, with the
 * current viewport shown as a rectangle. All mappings are pure and the
 * round trip (drag, then read the rectangle back) is exact up to float
 * noise, well inside one pixel.
 */

import type { Bounds, CanvasSize, Viewport } from "./scene";
import { UNIT_PX } from "./scene";

export interface MinimapBox {
  width: number;
  height: number;
}

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

/** Pixels per layout unit inside the minimap. */
export function minimapScale(bounds: Bounds, box: MinimapBox): number {
  const bw = Math.max(bounds.maxX - bounds.minX, 1e-6);
  const bh = Math.max(bounds.maxY - bounds.minY, 1e-6);
  return Math.min(box.width / bw, box.height / bh);
}

/** The viewport rectangle drawn on the minimap, in minimap pixels. */
export function viewportRect(
  vp: Viewport,
  canvas: CanvasSize,
  bounds: Bounds,
  box: MinimapBox,
): Rect {
  const s = minimapScale(bounds, box);
  const viewW = canvas.width / (UNIT_PX * vp.zoom);
  const viewH = canvas.height / (UNIT_PX * vp.zoom);
  return {
    x: (vp.x - bounds.minX) * s,
    y: (vp.y - bounds.minY) * s,
    w: viewW * s,
    h: viewH * s,
  };
}

/** Center the viewport on a minimap point (click or drag position). */
export function viewportForMinimapPoint(
  px: number,
  py: number,
  vp: Viewport,
  canvas: CanvasSize,
  bounds: Bounds,
  box: MinimapBox,
): Viewport {
  const s = minimapScale(bounds, box);
  const cx = px / s + bounds.minX;
  const cy = py / s + bounds.minY;
  const viewW = canvas.width / (UNIT_PX * vp.zoom);
  const viewH = canvas.height / (UNIT_PX * vp.zoom);
  return { x: cx - viewW / 2, y: cy - viewH / 2, zoom: vp.zoom };
}

/** Pan the viewport by a drag delta measured in minimap pixels. */
export function panByMinimapDelta(
  dx: number,
  dy: number,
  vp: Viewport,
  bounds: Bounds,
  box: MinimapBox,
): Viewport {
  const s = minimapScale(bounds, box);
  return { x: vp.x + dx / s, y: vp.y + dy / s, zoom: vp.zoom };
}

/**
 * Clamp a viewport so it always intersects the drawing's bounding box;
 * a fully lost viewport would leave the analyst staring at nothing.
 */
export function clampViewport(vp: Viewport, canvas: CanvasSize, bounds: Bounds): Viewport {
  const viewW = canvas.width / (UNIT_PX * vp.zoom);
  const viewH = canvas.height / (UNIT_PX * vp.zoom);
  let { x, y } = vp;
  x = Math.min(Math.max(x, bounds.minX - viewW + 0.25), bounds.maxX - 0.25);
  y = Math.min(Math.max(y, bounds.minY - viewH + 0.25), bounds.maxY - 0.25);
  return { x, y, zoom: vp.zoom };
}
