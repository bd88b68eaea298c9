"""Search over a view and the node <-> source-line mapping.

All searches run against the *current* view: numbers are the visible
numbering, and collapsed regions match through their super-node label.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .graph import GraphError, OrderedDigraph, UnknownNodeError
from .loops import NodeScore
from .numbering import SfrResult

SEARCH_KINDS = ("sfr", "method", "instruction")


class SearchSyntaxError(GraphError):
    pass


class UnknownMethodError(GraphError):
    def __init__(self, method_id: str):
        super().__init__(f"unknown method {method_id!r}")
        self.method_id = method_id


class EdgeNeighborhood(NamedTuple):
    incoming: list[int]
    outgoing: list[int]
    warnings: list[str]


@dataclass(frozen=True)
class Selection:
    """A set of visible nodes plus the source lines they map to."""

    nodes: frozenset[int]
    lines: dict[str, frozenset[int]]


def search(g: OrderedDigraph, t: SfrResult, kind: str, q: str) -> list[int]:
    """Find visible nodes by number, method substring, or instruction
    substring. Text matches are case-insensitive; results sorted by number."""
    if kind == "sfr":
        try:
            wanted = int(q.strip())
        except ValueError:
            raise SearchSyntaxError(f"not a number: {q!r}") from None
        if wanted < 1:
            raise SearchSyntaxError(f"numbering starts at 1, got {wanted}")
        return [v for v in t.order if t.number[v] == wanted]
    if kind not in SEARCH_KINDS:
        raise SearchSyntaxError(f"unknown search kind {kind!r}")
    needle = q.lower()
    hits = []
    for v in t.order:
        node = g.nodes[v]
        hay = node.method_id if kind == "method" else node.instruction_text
        if needle in hay.lower():
            hits.append(v)
    return hits


def edges_of(g: OrderedDigraph, t: SfrResult, v: int) -> EdgeNeighborhood:
    """Incoming and outgoing neighbors of a node.

    Outgoing keeps the stored edge order; incoming is sorted by source
    number (unnumbered sources last, by id). Asking about an unreachable
    node is answered, with a warning attached.
    """
    if v not in g.nodes:
        raise UnknownNodeError(v)
    outgoing = list(g.out_edges[v])
    incoming = sorted(
        g.in_edges[v],
        key=lambda u: (0, t.number[u]) if u in t.number else (1, u),
    )
    warnings = []
    if v not in t.number:
        warnings.append(f"node {v} unreachable from root")
    return EdgeNeighborhood(incoming, outgoing, warnings)


def nodes_to_lines(g: OrderedDigraph, selected: Iterable[int]) -> dict[str, set[int]]:
    """Map selected nodes to {method: line numbers}; nodes without a source
    line are skipped."""
    result: dict[str, set[int]] = {}
    for v in selected:
        node = g.nodes.get(v)
        if node is None:
            raise UnknownNodeError(v)
        if node.source_line is None:
            continue
        result.setdefault(node.method_id, set()).add(node.source_line)
    return result


def lines_to_nodes(g: OrderedDigraph, method_id: str, lines: Iterable[int]) -> set[int]:
    """All nodes of a method whose source line is in `lines`."""
    if method_id not in g.methods:
        raise UnknownMethodError(method_id)
    wanted = set(lines)
    return {
        nid
        for nid, node in g.nodes.items()
        if node.method_id == method_id and node.source_line in wanted
    }


def make_selection(g: OrderedDigraph, node_ids: Iterable[int]) -> Selection:
    ids = frozenset(node_ids)
    lines = {m: frozenset(ls) for m, ls in nodes_to_lines(g, ids).items()}
    return Selection(nodes=ids, lines=lines)


def innermost_loop_lines(g: OrderedDigraph, score: NodeScore) -> dict[str, set[int]]:
    """Per method, the source lines of its most deeply nested nodes.

    Methods without any loop involvement (max score 0) highlight nothing.
    """
    best: dict[str, int] = {}
    for v, s in score.score.items():
        node = g.nodes[v]
        if s > best.get(node.method_id, 0):
            best[node.method_id] = s
    picked = [
        v
        for v, s in score.score.items()
        if s > 0 and s == best.get(g.nodes[v].method_id, 0)
    ]
    return nodes_to_lines(g, picked)
