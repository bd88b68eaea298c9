"""Canonical vertex numberings and the spanning tree they induce.

The drawing backbone is the *sibling-first recursive* (SFR) numbering: when
a vertex is visited, every not-yet-numbered successor is claimed as a child
and numbered immediately, in out-edge order; only then does the traversal
recurse into the children, again in out-edge order. The result is a hybrid
between breadth-first numbering (all siblings before any grandchild) and
depth-first recursion (a child's whole subtree is explored before the next
sibling's), and it gives every node's children a consecutive run of numbers.

A plain depth-first numbering over the same ordered out-edges is provided
for comparison; it is never used for layout.

Both traversals use explicit stacks so that graphs with chains of tens of
thousands of nodes cannot overflow the interpreter stack. The visit order
is identical to the naive recursive formulation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import OrderedDigraph


@dataclass(frozen=True)
class SfrResult:
    """A numbering plus the rooted ordered spanning tree that produced it.

    number: node id -> 1..n over nodes reachable from the root (root is 1).
    parent: node id -> tree parent (root absent).
    children: node id -> ordered child list (every numbered node has a key).
    order: node ids sorted by number; order[0] is the root.
    """

    number: dict[int, int]
    parent: dict[int, int]
    children: dict[int, list[int]]
    order: list[int]

    def depth_of(self, v: int) -> int:
        d = 0
        while v in self.parent:
            v = self.parent[v]
            d += 1
        return d


def sfr_number(g: OrderedDigraph) -> SfrResult:
    """Sibling-first recursive numbering of the component reachable from root.

    The root is pre-numbered 1 and the counter starts at 2. Unreachable
    nodes receive no number. A self-loop on any node is never a tree edge
    (the node is already numbered when the edge is scanned).
    """
    root = g.root
    number: dict[int, int] = {root: 1}
    parent: dict[int, int] = {}
    children: dict[int, list[int]] = {}
    counter = 2
    stack = [root]
    while stack:
        v = stack.pop()
        kids: list[int] = []
        for w in g.out_edges[v]:
            if w not in number:
                number[w] = counter
                counter += 1
                parent[w] = v
                kids.append(w)
        children[v] = kids
        stack.extend(reversed(kids))
    order = sorted(number, key=number.__getitem__)
    return SfrResult(number, parent, children, order)


def dfs_number(g: OrderedDigraph) -> SfrResult:
    """Depth-first numbering over the same ordered out-edges.

    Each vertex is numbered on first visit and its successors are explored
    immediately, so later siblings of a branch point end up nested under
    the subtrees of earlier ones whenever an edge connects them.
    """
    root = g.root
    number: dict[int, int] = {root: 1}
    parent: dict[int, int] = {}
    children: dict[int, list[int]] = {root: []}
    counter = 2
    stack: list[tuple[int, int]] = [(root, 0)]  # (node, next out-edge index)
    while stack:
        v, i = stack[-1]
        edges = g.out_edges[v]
        moved = False
        while i < len(edges):
            w = edges[i]
            i += 1
            if w not in number:
                stack[-1] = (v, i)
                number[w] = counter
                counter += 1
                parent[w] = v
                children[v].append(w)
                children[w] = []
                stack.append((w, 0))
                moved = True
                break
        if not moved:
            stack.pop()
    order = sorted(number, key=number.__getitem__)
    return SfrResult(number, parent, children, order)
