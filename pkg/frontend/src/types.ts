/**
 * Wire types for the session API. These mirror the server's JSON schemas
 * exactly; the client never derives layout data of its own.
 */

export interface LayoutNode {
  id: number;
  sfr: number;
  lane: number;
  depth: number;
  x: number;
  y: number;
  score: number;
  color: string;
  collapsed: boolean;
  label: string;
}

export interface EdgeShape {
  type: "straight" | "curve";
  /** [start, end] for straight; [start, control, end] for curves. */
  points: number[][];
}

export interface LayoutEdge {
  src: number;
  dst: number;
  kind: string;
  shape: EdgeShape;
}

export interface LayoutExport {
  revision: number;
  nodes: LayoutNode[];
  edges: LayoutEdge[];
  warnings: string[];
}

export interface GroupEntry {
  kind: string;
  members: number[];
  label: string;
  comment: string | null;
  expanded: boolean;
  /** Super-node id when the group is currently drawn collapsed. */
  node: number | null;
}

export interface GroupsResponse {
  revision: number;
  groups: GroupEntry[];
}

export interface NodeDetails {
  revision: number;
  id: number;
  sfr: number | null;
  method: string;
  index: number;
  text: string;
  line: number | null;
  library: boolean;
  collapsed: boolean;
  label: string;
  comment: string | null;
  score: number | null;
  color: string | null;
  incoming: number[];
  outgoing: number[];
  warnings: string[];
  selected: boolean;
}

export interface CodePanelData {
  revision: number;
  method: string;
  lines: string[];
  highlights: number[];
  loop_lines: number[];
}

export interface SelectResponse {
  revision: number;
  nodes: number[];
  lines: Record<string, number[]>;
}

export interface SearchResponse {
  revision: number;
  results: number[];
}

export interface SessionRef {
  id: string;
  revision: number;
}
