/**
 * Pure view models for the two side panels.
 */

import type { CodePanelData, NodeDetails } from "./types";

export interface CodeLine {
  no: number;
  text: string;
  highlighted: boolean;
  inLoop: boolean;
}

export function codeLines(data: CodePanelData): CodeLine[] {
  const highlighted = new Set(data.highlights);
  const loops = new Set(data.loop_lines);
  return data.lines.map((text, i) => ({
    no: i + 1,
    text,
    highlighted: highlighted.has(i + 1),
    inLoop: loops.has(i + 1),
  }));
}

export interface DescriptionRow {
  label: string;
  value: string;
}

export function describeNode(node: NodeDetails): DescriptionRow[] {
  const rows: DescriptionRow[] = [
    { label: "number", value: node.sfr === null ? "unreachable" : `#${node.sfr}` },
    { label: "instruction", value: node.text },
    { label: "method", value: node.method },
    { label: "score", value: node.score === null ? "-" : String(node.score) },
    { label: "incoming", value: node.incoming.join(", ") || "none" },
    { label: "outgoing", value: node.outgoing.join(", ") || "none" },
  ];
  if (node.line !== null) rows.splice(3, 0, { label: "line", value: String(node.line) });
  if (node.collapsed) rows.unshift({ label: "group", value: node.label });
  if (node.comment) rows.push({ label: "comment", value: node.comment });
  if (node.library) rows.push({ label: "library", value: "yes" });
  for (const warning of node.warnings) rows.push({ label: "warning", value: warning });
  return rows;
}
