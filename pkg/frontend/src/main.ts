/**
 * Browser entry point: wires the view model to the DOM. Everything
 * interesting lives in the pure modules; this file only shuttles events
 * in and paints state out.
 */

import { ApiClient } from "./api";
import { drawScene, type Canvas2DLike } from "./canvas";
import { panByMinimapDelta, viewportForMinimapPoint, viewportRect, minimapScale } from "./minimap";
import { codeLines, describeNode } from "./panels";
import { nodeAt, toScreen, type DrawOp } from "./scene";
import { ClientViewModel } from "./viewmodel";

const MINIMAP = { width: 180, height: 140 };

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function paintMinimap(vm: ClientViewModel, canvas: HTMLCanvasElement): void {
  const ctx = canvas.getContext("2d");
  if (!ctx || !vm.layout) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const bounds = vm.bounds();
  const s = minimapScale(bounds, MINIMAP);
  for (const n of vm.layout.nodes) {
    ctx.fillStyle = n.color;
    ctx.fillRect((n.x - bounds.minX) * s - 2, (n.y - bounds.minY) * s - 1, 4, 2);
  }
  const rect = viewportRect(vm.viewport, vm.canvas, bounds, MINIMAP);
  ctx.strokeStyle = "#0b5fff";
  ctx.lineWidth = 1;
  ctx.strokeRect(rect.x, rect.y, rect.w, rect.h);
}

function paintPanels(vm: ClientViewModel): void {
  const code = el<HTMLDivElement>("code-panel");
  if (vm.codePanel) {
    code.replaceChildren(
      ...codeLines(vm.codePanel).map((line) => {
        const row = document.createElement("div");
        row.className = "code-line";
        if (line.highlighted) row.classList.add("highlight");
        if (line.inLoop) row.classList.add("loop");
        row.textContent = `${String(line.no).padStart(3)}  ${line.text}`;
        row.onclick = () => {
          void vm.selectLines(vm.codePanel!.method, [line.no]).then(() => paint(vm));
        };
        return row;
      }),
    );
  }
  const description = el<HTMLDivElement>("description-panel");
  if (vm.description) {
    description.replaceChildren(
      ...describeNode(vm.description).map((row) => {
        const div = document.createElement("div");
        div.className = "desc-row";
        const label = document.createElement("span");
        label.className = "desc-label";
        label.textContent = row.label;
        const value = document.createElement("span");
        value.textContent = row.value;
        div.append(label, value);
        return div;
      }),
    );
  }
  const banner = el<HTMLDivElement>("banner");
  banner.textContent = vm.warningBanner ?? "";
  banner.style.display = vm.warningBanner ? "block" : "none";
  const warnings = vm.layout?.warnings ?? [];
  el<HTMLDivElement>("warnings").textContent = warnings.join(" | ");
}

let lastScene: DrawOp[] = [];

function paint(vm: ClientViewModel): void {
  const canvas = el<HTMLCanvasElement>("graph-canvas");
  vm.canvas = { width: canvas.width, height: canvas.height };
  const ctx = canvas.getContext("2d") as unknown as Canvas2DLike | null;
  if (!ctx) return;
  lastScene = vm.scene();
  drawScene(ctx, lastScene);
  paintMinimap(vm, el<HTMLCanvasElement>("minimap-canvas"));
  paintPanels(vm);
}

function wire(): void {
  const api = new ApiClient("");
  const vm = new ClientViewModel(api);
  const canvas = el<HTMLCanvasElement>("graph-canvas");
  const minimap = el<HTMLCanvasElement>("minimap-canvas");

  el<HTMLButtonElement>("load-button").onclick = () => {
    const text = el<HTMLTextAreaElement>("graph-input").value;
    void vm.open(JSON.parse(text)).then(() => paint(vm));
  };

  canvas.onclick = (ev) => {
    const id = nodeAt(lastScene, ev.offsetX, ev.offsetY);
    if (id !== null) void vm.selectNode(id).then(() => paint(vm));
  };
  canvas.ondblclick = (ev) => {
    const id = nodeAt(lastScene, ev.offsetX, ev.offsetY);
    if (id !== null) void vm.toggleNode(id).then(() => paint(vm));
  };
  canvas.onwheel = (ev) => {
    ev.preventDefault();
    vm.zoomBy(ev.deltaY < 0 ? 1.15 : 1 / 1.15, ev.offsetX, ev.offsetY);
    paint(vm);
  };
  let dragging = false;
  let lastX = 0;
  let lastY = 0;
  canvas.onmousedown = (ev) => {
    dragging = true;
    lastX = ev.offsetX;
    lastY = ev.offsetY;
  };
  canvas.onmousemove = (ev) => {
    if (!dragging) return;
    vm.panBy(ev.offsetX - lastX, ev.offsetY - lastY);
    lastX = ev.offsetX;
    lastY = ev.offsetY;
    paint(vm);
  };
  canvas.onmouseup = canvas.onmouseleave = () => {
    dragging = false;
  };

  let minimapDragging = false;
  minimap.onmousedown = (ev) => {
    minimapDragging = true;
    vm.setViewport(
      viewportForMinimapPoint(ev.offsetX, ev.offsetY, vm.viewport, vm.canvas, vm.bounds(), MINIMAP),
    );
    paint(vm);
  };
  minimap.onmousemove = (ev) => {
    if (!minimapDragging) return;
    vm.setViewport(panByMinimapDelta(ev.movementX, ev.movementY, vm.viewport, vm.bounds(), MINIMAP));
    paint(vm);
  };
  minimap.onmouseup = minimap.onmouseleave = () => {
    minimapDragging = false;
  };

  el<HTMLFormElement>("search-form").onsubmit = (ev) => {
    ev.preventDefault();
    const kind = el<HTMLSelectElement>("search-kind").value;
    const q = el<HTMLInputElement>("search-q").value;
    void vm.search(kind, q).then((results) => {
      const list = el<HTMLDivElement>("search-results");
      list.replaceChildren(
        ...results.map((id) => {
          const item = document.createElement("button");
          const node = vm.layout?.nodes.find((n) => n.id === id);
          item.textContent = node ? `#${node.sfr} ${node.label}` : String(id);
          item.onclick = () => {
            vm.focusNode(id);
            void vm.selectNode(id).then(() => paint(vm));
          };
          return item;
        }),
      );
      paint(vm);
    });
  };

  el<HTMLDivElement>("banner").onclick = () => {
    vm.dismissWarning();
    paint(vm);
  };

  // expose for debugging in the console
  (window as unknown as { sfrviz: unknown }).sfrviz = { vm, paint: () => paint(vm), toScreen };
}

document.addEventListener("DOMContentLoaded", wire);
