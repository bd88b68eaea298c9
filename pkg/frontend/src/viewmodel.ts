/**
 * Client view model: session handle, current layout export, viewport,
 * selection, search results, panel payloads, and the interaction logic.
 *
 * Two rules hold everywhere. First, the client computes no layout: node
 * and edge coordinates come from the server export and only pass through
 * the viewport transform. Second, at most one mutating request is in
 * flight; a 409 answer (someone else moved the session) raises a warning
 * banner and re-fetches instead of retrying blindly.
 */

import { ApiClient, ApiError } from "./api";
import type { Bounds, CanvasSize, DrawOp, Viewport } from "./scene";
import { buildScene, layoutBounds } from "./scene";
import { clampViewport } from "./minimap";
import type {
  CodePanelData,
  GroupEntry,
  LayoutExport,
  NodeDetails,
} from "./types";

export class ClientViewModel {
  sessionId = "";
  revision = 0;
  layout: LayoutExport | null = null;
  groups: GroupEntry[] = [];
  viewport: Viewport = { x: -0.5, y: -0.5, zoom: 1 };
  canvas: CanvasSize = { width: 800, height: 600 };
  selection: Set<number> = new Set();
  searchResults: number[] = [];
  codePanel: CodePanelData | null = null;
  description: NodeDetails | null = null;
  warningBanner: string | null = null;

  private mutationInFlight = false;

  constructor(private readonly api: ApiClient) {}

  async open(graphDoc: unknown): Promise<void> {
    const ref = await this.api.createSession(graphDoc);
    this.sessionId = ref.id;
    this.revision = ref.revision;
    await this.refresh();
  }

  async refresh(): Promise<void> {
    this.layout = await this.api.layout(this.sessionId);
    this.revision = this.layout.revision;
    this.groups = (await this.api.groups(this.sessionId)).groups;
    const visible = new Set(this.layout.nodes.map((n) => n.id));
    this.selection = new Set([...this.selection].filter((id) => visible.has(id)));
    this.viewport = clampViewport(this.viewport, this.canvas, this.bounds());
  }

  bounds(): Bounds {
    return layoutBounds(this.layout ?? { nodes: [], edges: [] });
  }

  scene(): DrawOp[] {
    if (!this.layout) return [];
    return buildScene(this.layout, this.viewport, this.selection, this.canvas);
  }

  setViewport(vp: Viewport): void {
    this.viewport = clampViewport(vp, this.canvas, this.bounds());
  }

  panBy(dxPx: number, dyPx: number): void {
    const unit = 80 * this.viewport.zoom;
    this.setViewport({
      x: this.viewport.x - dxPx / unit,
      y: this.viewport.y - dyPx / unit,
      zoom: this.viewport.zoom,
    });
  }

  zoomBy(factor: number, anchorX: number, anchorY: number): void {
    const before = this.viewport;
    const zoom = Math.min(Math.max(before.zoom * factor, 0.1), 8);
    // keep the layout point under the anchor fixed on screen
    const scaleBefore = 80 * before.zoom;
    const scaleAfter = 80 * zoom;
    const lx = anchorX / scaleBefore + before.x;
    const ly = anchorY / scaleBefore + before.y;
    this.setViewport({ x: lx - anchorX / scaleAfter, y: ly - anchorY / scaleAfter, zoom });
  }

  /** Click: select the node, fill both panels. */
  async selectNode(id: number): Promise<void> {
    const result = await this.mutate(() =>
      this.api.select(this.sessionId, { revision: this.revision, nodes: [id] }),
    );
    if (!result) return;
    this.revision = result.revision;
    this.selection = new Set(result.nodes);
    this.description = await this.api.node(this.sessionId, id);
    this.codePanel = await this.api.code(this.sessionId, this.description.method);
  }

  /** Select by source lines from the code panel; highlights the nodes. */
  async selectLines(method: string, lines: number[]): Promise<void> {
    const result = await this.mutate(() =>
      this.api.select(this.sessionId, { revision: this.revision, method, lines }),
    );
    if (!result) return;
    this.revision = result.revision;
    this.selection = new Set(result.nodes);
    this.codePanel = await this.api.code(this.sessionId, method);
  }

  /**
   * Double-click: a collapsed super-node expands; any other node collapses
   * its innermost enclosing expanded group, when one exists.
   */
  async toggleNode(id: number): Promise<boolean> {
    const node = this.layout?.nodes.find((n) => n.id === id);
    if (!node) return false;
    if (node.collapsed) {
      const ok = await this.mutate(() =>
        this.api.expand(this.sessionId, { revision: this.revision, ref: id }),
      );
      if (ok) await this.refresh();
      return ok !== null;
    }
    const enclosing = this.groups
      .filter((g) => g.expanded && g.members.includes(id))
      .sort((a, b) => a.members.length - b.members.length)[0];
    if (!enclosing) return false;
    const ok = await this.mutate(() =>
      this.api.collapse(this.sessionId, { revision: this.revision, ref: enclosing.label }),
    );
    if (ok) await this.refresh();
    return ok !== null;
  }

  async search(kind: string, q: string): Promise<number[]> {
    const response = await this.api.search(this.sessionId, kind, q);
    this.searchResults = response.results;
    if (this.searchResults.length > 0) this.focusNode(this.searchResults[0]);
    return this.searchResults;
  }

  /** Center the viewport on a node; position read from the export. */
  focusNode(id: number): void {
    const node = this.layout?.nodes.find((n) => n.id === id);
    if (!node) return;
    const unit = 80 * this.viewport.zoom;
    this.setViewport({
      x: node.x - this.canvas.width / unit / 2,
      y: node.y - this.canvas.height / unit / 2,
      zoom: this.viewport.zoom,
    });
  }

  dismissWarning(): void {
    this.warningBanner = null;
  }

  private async mutate<T>(call: () => Promise<T>): Promise<T | null> {
    if (this.mutationInFlight) return null;
    this.mutationInFlight = true;
    try {
      const result = await call();
      this.warningBanner = null;
      return result;
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.warningBanner = "view changed elsewhere; reloaded latest revision";
        await this.refresh();
        return null;
      }
      if (err instanceof ApiError) {
        this.warningBanner = err.message;
        return null;
      }
      throw err;
    } finally {
      this.mutationInFlight = false;
    }
  }
}
