"""Grid placement of the spanning tree: exclusive vertical lanes per subtree.

Every subtree is reserved a contiguous interval of integer lanes wide
enough for all of its leaves, so nothing outside the subtree ever sits
directly underneath any of its nodes. A parent is drawn one row above its
children and aligned over its first child, which keeps straight chains in
a single column. The deliberate cost is width: no vertical space is ever
reused, because compaction would shift unrelated nodes around when part
of the graph is collapsed or expanded.

Coordinates are abstract: one unit per lane and per row. Renderers scale.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import UnknownNodeError
from .numbering import SfrResult

LANE_UNIT = 1.0
ROW_UNIT = 1.0

# Node cell size in abstract units; edge anchors and renderers share these.
NODE_WIDTH = 0.6
NODE_HEIGHT = 0.4


@dataclass(frozen=True)
class LayoutResult:
    """Per-node grid cell and real coordinates.

    lane: leftmost lane of the node's subtree interval (its own column).
    depth: tree depth, root = 0 (the row).
    width: lane count of the node's subtree (leaf count).
    position: (x, y) with x = lane * LANE_UNIT, y = depth * ROW_UNIT.
    """

    lane: dict[int, int]
    depth: dict[int, int]
    width: dict[int, int]
    position: dict[int, tuple[float, float]]


def layout_tree(t: SfrResult) -> LayoutResult:
    width: dict[int, int] = {}
    for v in reversed(t.order):  # children before parents
        kids = t.children[v]
        width[v] = sum(width[c] for c in kids) if kids else 1

    root = t.order[0]
    lane: dict[int, int] = {root: 0}
    depth: dict[int, int] = {root: 0}
    for v in t.order:  # parents before children
        start = lane[v]
        d = depth[v] + 1
        for c in t.children[v]:
            lane[c] = start
            depth[c] = d
            start += width[c]

    position = {v: (lane[v] * LANE_UNIT, depth[v] * ROW_UNIT) for v in t.order}
    return LayoutResult(lane, depth, width, position)


def subtree_nodes(t: SfrResult, v: int) -> list[int]:
    """All tree descendants of v including v, in number order."""
    result = []
    stack = [v]
    while stack:
        u = stack.pop()
        result.append(u)
        stack.extend(reversed(t.children[u]))
    result.sort(key=t.number.__getitem__)
    return result


def sublayout_of(l: LayoutResult, t: SfrResult, v: int) -> LayoutResult:
    """The layout restricted to v's subtree, translated to lane 0 / depth 0.

    Because placement is purely structural, two subtrees with the same
    ordered shape produce identical sublayouts; that is what makes repeated
    code fragments recognizable at a glance.
    """
    if v not in t.number:
        raise UnknownNodeError(v)
    members = subtree_nodes(t, v)
    dlane = l.lane[v]
    ddepth = l.depth[v]
    lane = {u: l.lane[u] - dlane for u in members}
    depth = {u: l.depth[u] - ddepth for u in members}
    width = {u: l.width[u] for u in members}
    position = {u: (lane[u] * LANE_UNIT, depth[u] * ROW_UNIT) for u in members}
    return LayoutResult(lane, depth, width, position)
