"""Wire formats: canonical layout export, SVG rendering, session documents.

The layout export is canonical -- keys sorted, nodes ordered by number,
fixed float formatting -- so that determinism guarantees can be tested as
byte equality. The SVG renderer consumes only the export document, never
the in-process objects, which pins it to the same contract the UI uses.
"""

from __future__ import annotations

import json
from typing import Iterable
from xml.sax.saxutils import escape

from .graph import OrderedDigraph, serialize
from .grouping import GroupSpec, RenderedView, ViewState
from .layout import NODE_HEIGHT, NODE_WIDTH

SVG_SCALE = 80.0
SVG_MARGIN = 40.0
LABEL_MAX_CHARS = 26


def layout_export(rendered: RenderedView) -> dict:
    """The drawing as plain data: one entry per visible node and edge."""
    g = rendered.visible
    t = rendered.tree
    lay = rendered.layout
    score = rendered.score

    nodes = []
    for v in t.order:
        node = g.nodes[v]
        info = g.super_nodes.get(v)
        x, y = lay.position[v]
        r, gr, b = score.color[v]
        nodes.append(
            {
                "id": v,
                "sfr": t.number[v],
                "lane": lay.lane[v],
                "depth": lay.depth[v],
                "x": x,
                "y": y,
                "score": score.score[v],
                "color": f"#{r:02x}{gr:02x}{b:02x}",
                "collapsed": info is not None,
                "label": info.label if info is not None else node.instruction_text,
            }
        )

    edges = [
        {
            "src": route.src,
            "dst": route.dst,
            "kind": route.kind,
            "shape": {
                "type": route.shape,
                "points": [[px, py] for px, py in route.points],
            },
        }
        for route in rendered.routes
    ]

    return {"nodes": nodes, "edges": edges, "warnings": list(g.warnings)}


def canonical_bytes(document: dict) -> bytes:
    return json.dumps(document, sort_keys=True, separators=(",", ":")).encode("utf-8")


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def render_svg(export: dict) -> str:
    """Deterministic SVG 1.1 drawing of a layout export."""
    nodes = export["nodes"]
    edges = export["edges"]

    xs = [n["x"] for n in nodes] or [0.0]
    ys = [n["y"] for n in nodes] or [0.0]
    for e in edges:
        xs.extend(p[0] for p in e["shape"]["points"])
        ys.extend(p[1] for p in e["shape"]["points"])
    width = 2 * SVG_MARGIN + (max(xs) + NODE_WIDTH / 2) * SVG_SCALE
    height = 2 * SVG_MARGIN + (max(ys) + NODE_HEIGHT / 2) * SVG_SCALE

    def px(x: float) -> str:
        return _fmt(SVG_MARGIN + (x + NODE_WIDTH / 2) * SVG_SCALE)

    def py(y: float) -> str:
        return _fmt(SVG_MARGIN + (y + NODE_HEIGHT / 2) * SVG_SCALE)

    out: list[str] = []
    out.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    )
    out.append(
        "<defs>"
        '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" '
        'markerWidth="6" markerHeight="6" orient="auto-start-reverse">'
        '<path d="M 0 0 L 10 5 L 0 10 z" fill="#444"/>'
        "</marker>"
        "</defs>"
    )

    for e in edges:
        pts = e["shape"]["points"]
        dashed = ' stroke-dasharray="5 3"' if e["kind"] == "forward-down" else ""
        if e["shape"]["type"] == "straight":
            (x1, y1), (x2, y2) = pts
            out.append(
                f'<line x1="{px(x1)}" y1="{py(y1)}" x2="{px(x2)}" y2="{py(y2)}" '
                f'stroke="#444" stroke-width="1.5" marker-end="url(#arrow)"{dashed}/>'
            )
        else:
            (x1, y1), (cx, cy), (x2, y2) = pts
            out.append(
                f'<path d="M {px(x1)} {py(y1)} Q {px(cx)} {py(cy)} {px(x2)} {py(y2)}" '
                f'fill="none" stroke="#444" stroke-width="1.5" marker-end="url(#arrow)"/>'
            )

    half_w = NODE_WIDTH / 2 * SVG_SCALE
    half_h = NODE_HEIGHT / 2 * SVG_SCALE
    for n in nodes:
        cx = SVG_MARGIN + (n["x"] + NODE_WIDTH / 2) * SVG_SCALE
        cy = SVG_MARGIN + (n["y"] + NODE_HEIGHT / 2) * SVG_SCALE
        style = ' stroke-dasharray="4 2" stroke-width="2"' if n["collapsed"] else ' stroke-width="1"'
        title = escape(f"#{n['sfr']} {n['label']}")
        color = n["color"]
        out.append(
            f'<rect x="{_fmt(cx - half_w)}" y="{_fmt(cy - half_h)}" '
            f'width="{_fmt(2 * half_w)}" height="{_fmt(2 * half_h)}" rx="4" '
            f'fill="{color}" fill-opacity="0.55" stroke="#222"{style}>'
            f"<title>{title}</title></rect>"
        )
        label = n["label"]
        if len(label) > LABEL_MAX_CHARS:
            label = label[: LABEL_MAX_CHARS - 3] + "..."
        out.append(
            f'<text x="{_fmt(cx)}" y="{_fmt(cy + 3)}" text-anchor="middle" '
            f'font-family="monospace" font-size="10">{escape(label)}</text>'
        )
        out.append(
            f'<text x="{_fmt(cx - half_w + 2)}" y="{_fmt(cy - half_h - 2)}" '
            f'font-family="monospace" font-size="8" fill="#666">{n["sfr"]}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def view_to_doc(view: ViewState) -> list[dict]:
    groups = sorted(
        view.active_groups, key=lambda s: (s.kind, s.label, tuple(sorted(s.members)))
    )
    return [
        {
            "kind": spec.kind,
            "members": sorted(spec.members),
            "label": spec.label,
            "comment": spec.comment,
            "expanded": spec in view.expanded,
        }
        for spec in groups
    ]


def view_from_doc(doc: Iterable[dict]) -> ViewState:
    active = []
    expanded = []
    for entry in doc:
        spec = GroupSpec(
            kind=entry.get("kind", "user"),
            members=frozenset(entry["members"]),
            label=entry.get("label", ""),
            comment=entry.get("comment"),
        )
        active.append(spec)
        if entry.get("expanded", False):
            expanded.append(spec)
    return ViewState(frozenset(active), frozenset(expanded))


def session_to_doc(g: OrderedDigraph, view: ViewState) -> dict:
    return {"graph": serialize(g), "view": view_to_doc(view)}
