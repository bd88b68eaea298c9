"""Loop-nesting forest and the nesting-depth vulnerability scores.

Loops are defined structurally: the outermost loops are the maximal
strongly connected components of the reachable graph (counting a single
node with a self-loop as a component); each loop's header is the member
reached first in the canonical spanning tree, i.e. the member with the
minimum number; the inner loops are the components that remain once the
header is removed, recursively.

A node's score is simply how many loop bodies contain it. Deeply nested
code is where accidental or planted algorithmic blow-ups live, so scores
map onto a green-to-red color ramp for display.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .graph import OrderedDigraph
from .numbering import SfrResult


@dataclass(frozen=True)
class Loop:
    header: int
    body: frozenset[int]  # header included
    parent: int | None  # index of the enclosing loop, None for outermost


@dataclass(frozen=True)
class LoopForest:
    loops: list[Loop]
    depth: dict[int, int]  # node id -> number of loop bodies containing it
    max_depth: int


@dataclass(frozen=True)
class NodeScore:
    score: dict[int, int]
    color: dict[int, tuple[int, int, int]]


def _strongly_connected_components(
    nodes: Sequence[int], successors: Callable[[int], Iterable[int]]
) -> list[list[int]]:
    """Tarjan's algorithm, iterative. Components in completion order."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for start in nodes:
        if start in index:
            continue
        work: list[tuple[int, int, list[int]]] = [(start, 0, list(successors(start)))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            v, i, succ = work[-1]
            moved = False
            while i < len(succ):
                w = succ[i]
                i += 1
                if w not in index:
                    work[-1] = (v, i, succ)
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, 0, list(successors(w))))
                    moved = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if moved:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
    return components


def loop_forest(g: OrderedDigraph, t: SfrResult) -> LoopForest:
    """Recursive loop decomposition over the nodes numbered in t.

    A self-loop makes a single node a loop of size one. Sibling loops are
    emitted in ascending header-number order, outer loops before inner.
    """
    number = t.number
    reachable = set(number)

    loops: list[Loop] = []
    depth = {v: 0 for v in reachable}

    def bodies_in(node_set: frozenset[int]) -> list[frozenset[int]]:
        members = sorted(node_set, key=number.__getitem__)

        def succ(v: int) -> list[int]:
            return [w for w in g.out_edges[v] if w in node_set]

        found = [
            frozenset(comp)
            for comp in _strongly_connected_components(members, succ)
            if len(comp) > 1 or comp[0] in g.out_edges[comp[0]]
        ]
        found.sort(key=lambda c: min(number[v] for v in c))
        return found

    # Explicit worklist instead of recursion: nesting can be arbitrarily
    # deep. "scan" finds the loops inside a node set; "emit" records one
    # loop and queues the scan of its body. LIFO order with reversed
    # pushes yields a pre-order listing, siblings by header number.
    work: list[tuple[str, frozenset[int], int | None]] = [
        ("scan", frozenset(reachable), None)
    ]
    while work:
        action, node_set, parent_idx = work.pop()
        if action == "scan":
            work.extend(
                ("emit", body, parent_idx) for body in reversed(bodies_in(node_set))
            )
            continue
        header = min(node_set, key=number.__getitem__)
        idx = len(loops)
        loops.append(Loop(header=header, body=node_set, parent=parent_idx))
        for v in node_set:
            depth[v] += 1
        work.append(("scan", node_set - {header}, idx))

    max_depth = max(depth.values(), default=0)
    return LoopForest(loops=loops, depth=depth, max_depth=max_depth)


def is_reducible(g: OrderedDigraph, f: LoopForest) -> bool:
    """True iff every edge entering a loop body from outside hits its header.

    Equivalently: every cycle has a single entry point, which is exactly
    when the decomposition is independent of the spanning tree used to
    pick headers. Edges from unreachable nodes are ignored, matching the
    forest's restriction to the reachable component.
    """
    reachable = set(f.depth)
    for loop in f.loops:
        for w in loop.body:
            if w == loop.header:
                continue
            for u in g.in_edges[w]:
                if u in reachable and u not in loop.body:
                    return False
    return True


def score_nodes(f: LoopForest) -> NodeScore:
    """Nesting depth as score, mapped onto a green (0) to red (max) ramp.

    The hue interpolates linearly from 120 degrees down to 0 at full
    saturation and value, so intermediate nesting levels pass through
    yellow and orange. A graph with no loops is drawn all green.
    """
    score = dict(f.depth)
    color: dict[int, tuple[int, int, int]] = {}
    for v, s in score.items():
        ratio = s / f.max_depth if f.max_depth else 0.0
        hue = 120.0 * (1.0 - ratio)
        r, g_, b = colorsys.hsv_to_rgb(hue / 360.0, 1.0, 1.0)
        color[v] = (round(r * 255), round(g_ * 255), round(b * 255))
    return NodeScore(score=score, color=color)
