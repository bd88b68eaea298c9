"""Edge classification and drawable routes.

Downward edges (target on a lower row) are straight segments from the
source's bottom anchor to the target's top anchor. Everything else --
back edges, same-row edges, self-loops -- is a quadratic curve bulging to
the right of its rightmost endpoint, so an upward edge can never lie on
top of a downward one and the bend itself signals edge direction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import OrderedDigraph
from .layout import NODE_HEIGHT, LayoutResult
from .numbering import SfrResult

# Control-point offset: base plus a small slope per row spanned, so longer
# back edges bow out further and nested loop edges do not coincide.
_CURVE_BASE = 0.4
_CURVE_PER_ROW = 0.05

KIND_TREE = "tree"
KIND_FORWARD_DOWN = "forward-down"
KIND_UPWARD = "upward"
KIND_LATERAL = "lateral"
KIND_SELF = "self"


@dataclass(frozen=True)
class EdgeRoute:
    """One drawable edge: straight (2 points) or quadratic curve (3 points,
    middle point is the control point)."""

    src: int
    dst: int
    kind: str
    points: tuple[tuple[float, float], ...]

    @property
    def shape(self) -> str:
        return "straight" if len(self.points) == 2 else "curve"


def route_edges(g: OrderedDigraph, t: SfrResult, l: LayoutResult) -> list[EdgeRoute]:
    """One route per deduplicated edge between numbered nodes.

    Output is sorted by (source number, target number), so routing is
    deterministic regardless of traversal details.
    """
    pairs = [
        (src, dst)
        for src in t.order
        for dst in g.out_edges[src]
        if dst in t.number
    ]
    pairs.sort(key=lambda e: (t.number[e[0]], t.number[e[1]]))

    routes = []
    for src, dst in pairs:
        xs, ys = l.position[src]
        xd, yd = l.position[dst]
        dsrc, ddst = l.depth[src], l.depth[dst]

        if src == dst:
            kind = KIND_SELF
        elif t.parent.get(dst) == src:
            kind = KIND_TREE
        elif ddst > dsrc:
            kind = KIND_FORWARD_DOWN
        elif ddst < dsrc:
            kind = KIND_UPWARD
        else:
            kind = KIND_LATERAL

        if ddst > dsrc:
            start = (xs, ys + NODE_HEIGHT / 2)  # src bottom
            end = (xd, yd - NODE_HEIGHT / 2)  # dst top
            points = (start, end)
        else:
            start = (xs, ys - NODE_HEIGHT / 2)  # src top
            end = (xd, yd + NODE_HEIGHT / 2)  # dst bottom
            offset = _CURVE_BASE + _CURVE_PER_ROW * (1 + abs(dsrc - ddst))
            control = (max(xs, xd) + offset, (start[1] + end[1]) / 2)
            points = (start, control, end)
        routes.append(EdgeRoute(src, dst, kind, points))
    return routes
