"""Aggregation of nodes into collapsible groups, and the view-state model.

Four grouping mechanisms exist:

* library  -- maximal weakly-connected sets of library-call nodes, collapsed
  from the start so library internals never clutter the drawing;
* method   -- connected sets of nodes belonging to the same method, present
  from the start but expanded, so the analyst can fold any method away;
* chain    -- maximal runs of method groups that connect in a straight line
  (in-degree one, out-degree one) once methods are contracted; long call
  chains start collapsed because they hide the branching structure;
* user     -- any connected set the analyst selects, with an optional
  comment. User groups must be entered at a single point of the spanning
  tree; collapsing a region with two tree entries would force unrelated
  nodes to shift and break the mental map.

A ViewState is a value: the set of active groups plus the subset currently
expanded. Everything drawn is recomputed from scratch for the collapsed
set, never patched incrementally, which is what makes the drawing a pure
function of the view regardless of the order of user actions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .edges import EdgeRoute, route_edges
from .graph import (
    GraphError,
    OrderedDigraph,
    quotient,
    weakly_connected,
)
from .layout import LayoutResult, layout_tree
from .loops import LoopForest, NodeScore, loop_forest, score_nodes
from .numbering import SfrResult, sfr_number

KIND_LIBRARY = "library"
KIND_METHOD = "method"
KIND_CHAIN = "chain"
KIND_USER = "user"


class InvalidGroupError(GraphError):
    pass


class MultipleTreeEntryError(InvalidGroupError):
    def __init__(self, entries: list[int]):
        super().__init__(f"multiple tree entries: {sorted(entries)}")
        self.entries = entries


class UnknownGroupError(GraphError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    members: frozenset[int]
    label: str
    comment: Optional[str] = None


@dataclass(frozen=True)
class ViewState:
    active_groups: frozenset[GroupSpec] = frozenset()
    expanded: frozenset[GroupSpec] = frozenset()

    @property
    def collapsed(self) -> frozenset[GroupSpec]:
        return self.active_groups - self.expanded


@dataclass(frozen=True)
class RenderedView:
    """Everything derivable from (graph, collapsed-group set)."""

    visible: OrderedDigraph
    tree: SfrResult
    layout: LayoutResult
    routes: list[EdgeRoute]
    forest: LoopForest
    score: NodeScore


def _components(members: set[int], g: OrderedDigraph) -> list[set[int]]:
    """Weakly connected components of the subgraph induced on `members`."""
    adj: dict[int, set[int]] = {m: set() for m in members}
    for src in members:
        for dst in g.out_edges[src]:
            if dst in adj:
                adj[src].add(dst)
                adj[dst].add(src)
    seen: set[int] = set()
    comps: list[set[int]] = []
    for start in sorted(members):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def default_view(g: OrderedDigraph, t: SfrResult) -> ViewState:
    """The initial grouping: library sets collapsed, methods expanded,
    straight-line chains of methods collapsed."""

    def min_number(members: set[int]) -> tuple[int, int]:
        numbered = [t.number[m] for m in members if m in t.number]
        return (0, min(numbered)) if numbered else (1, min(members))

    library_nodes = {nid for nid, n in g.nodes.items() if n.is_library}
    library_groups = []
    for i, comp in enumerate(
        sorted(_components(library_nodes, g), key=min_number)
    ):
        library_groups.append(
            GroupSpec(
                kind=KIND_LIBRARY,
                members=frozenset(comp),
                label=f"library [{i + 1}]" if i else "library",
            )
        )

    method_groups = []
    by_method: dict[str, set[int]] = {}
    for nid, node in g.nodes.items():
        if not node.is_library:
            by_method.setdefault(node.method_id, set()).add(nid)
    for method_id in sorted(by_method):
        comps = sorted(_components(by_method[method_id], g), key=min_number)
        for i, comp in enumerate(comps):
            label = method_id if len(comps) == 1 else f"{method_id} [{i + 1}]"
            method_groups.append(
                GroupSpec(kind=KIND_METHOD, members=frozenset(comp), label=label)
            )

    chain_groups = _chain_groups(g, t, library_groups, method_groups)

    active = frozenset(library_groups) | frozenset(method_groups) | frozenset(chain_groups)
    return ViewState(active_groups=active, expanded=frozenset(method_groups))


def _chain_groups(
    g: OrderedDigraph,
    t: SfrResult,
    library_groups: list[GroupSpec],
    method_groups: list[GroupSpec],
) -> list[GroupSpec]:
    """Detect straight-line runs of method groups in the method-level view."""
    if not method_groups:
        return []
    method_quotient = quotient(g, library_groups + method_groups, order=t.number)
    sid_of = {info.members: sid for sid, info in method_quotient.super_nodes.items()}

    qualified = set()
    for spec in method_groups:
        sid = sid_of[spec.members]
        if len(method_quotient.out_edges[sid]) == 1 and len(method_quotient.in_edges[sid]) == 1:
            qualified.add(sid)

    def linked_next(sid: int) -> int | None:
        (succ,) = method_quotient.out_edges[sid]
        return succ if succ in qualified else None

    preds: dict[int, int] = {}
    for sid in qualified:
        nxt = linked_next(sid)
        if nxt is not None:
            preds[nxt] = sid

    starts = sorted(
        (sid for sid in qualified if sid not in preds),
        key=lambda s: min(
            t.number.get(m, 1 << 60) for m in method_quotient.super_nodes[s].members
        ),
    )
    runs: list[list[int]] = []
    visited: set[int] = set()
    for start in starts:
        run = []
        sid: int | None = start
        while sid is not None and sid not in visited:
            visited.add(sid)
            run.append(sid)
            sid = linked_next(sid)
        runs.append(run)
    # A ring of qualified methods has no start; break it at the lowest number.
    leftovers = sorted(
        qualified - visited,
        key=lambda s: min(
            t.number.get(m, 1 << 60) for m in method_quotient.super_nodes[s].members
        ),
    )
    for start in leftovers:
        if start in visited:
            continue
        run = []
        sid = start
        while sid is not None and sid not in visited:
            visited.add(sid)
            run.append(sid)
            sid = linked_next(sid)
        runs.append(run)

    chain_groups = []
    for run in runs:
        if len(run) < 2:
            continue
        infos = [method_quotient.super_nodes[sid] for sid in run]
        members = frozenset().union(*(info.members for info in infos))
        label = " -> ".join(info.label for info in infos)
        chain_groups.append(GroupSpec(kind=KIND_CHAIN, members=members, label=label))
    return chain_groups


def _maximal_collapsed(view: ViewState) -> list[GroupSpec]:
    """Collapsed groups minus those nested inside another collapsed group,
    in a canonical order independent of how the view was built."""
    collapsed = sorted(
        view.collapsed, key=lambda s: (s.kind, s.label, tuple(sorted(s.members)))
    )
    maximal = []
    seen: set[frozenset[int]] = set()
    for spec in collapsed:
        if spec.members in seen:
            continue
        if any(spec.members < other.members for other in collapsed):
            continue
        seen.add(spec.members)
        maximal.append(spec)
    return maximal


def render_view(g: OrderedDigraph, view: ViewState) -> RenderedView:
    """Quotient by the collapsed groups and rerun the whole pipeline.

    The result depends only on (g, collapsed-group set); action history
    cannot leak in because nothing is patched incrementally.
    """
    visible = quotient(g, _maximal_collapsed(view))
    tree = sfr_number(visible)
    lay = layout_tree(tree)
    routes = route_edges(visible, tree, lay)
    forest = loop_forest(visible, tree)
    score = score_nodes(forest)
    return RenderedView(
        visible=visible, tree=tree, layout=lay, routes=routes, forest=forest, score=score
    )


def _normalize_members(visible: OrderedDigraph, members: frozenset[int]) -> frozenset[int]:
    """Replace visible super-node ids with their base members."""
    base: set[int] = set()
    for m in members:
        info = visible.super_nodes.get(m)
        if info is not None and m in visible.nodes:
            base |= info.members
        else:
            base.add(m)
    return frozenset(base)


def validate_group(g: OrderedDigraph, view: ViewState, spec: GroupSpec) -> GroupSpec:
    """Check a new group against the current visible graph and return the
    spec with members normalized to base-graph node ids."""
    if not spec.members:
        raise InvalidGroupError("group has no members")
    rendered = render_view(g, view)
    visible = rendered.visible
    for m in spec.members:
        if m not in visible.nodes:
            raise InvalidGroupError(f"node {m} is not visible in the current view")
    if not weakly_connected(visible, spec.members):
        raise InvalidGroupError(f"group {spec.label!r} is not weakly connected")
    if spec.kind == KIND_USER:
        tree = rendered.tree
        unnumbered = [m for m in spec.members if m not in tree.number]
        if unnumbered:
            raise InvalidGroupError(
                f"members {sorted(unnumbered)} are unreachable in the current view"
            )
        entries = [
            m
            for m in spec.members
            if m == visible.root or tree.parent.get(m) not in spec.members
        ]
        if len(entries) != 1:
            raise MultipleTreeEntryError(entries)
    normalized = _normalize_members(visible, spec.members)
    for other in view.collapsed:
        overlap = normalized & other.members
        if overlap and not (
            normalized <= other.members or other.members <= normalized
        ):
            raise InvalidGroupError(
                f"group {spec.label!r} partially overlaps collapsed group {other.label!r}"
            )
    return GroupSpec(spec.kind, normalized, spec.label, spec.comment)


def collapse(g: OrderedDigraph, view: ViewState, spec: GroupSpec) -> ViewState:
    """Collapse an existing group, or validate and add a new one."""
    if spec in view.active_groups:
        return ViewState(view.active_groups, view.expanded - {spec})
    normalized = validate_group(g, view, spec)
    if normalized in view.active_groups:
        return ViewState(view.active_groups, view.expanded - {normalized})
    return ViewState(view.active_groups | {normalized}, view.expanded)


def expand(view: ViewState, spec: GroupSpec) -> ViewState:
    if spec not in view.active_groups:
        raise UnknownGroupError(f"unknown group {spec.label!r}")
    return ViewState(view.active_groups, view.expanded | {spec})
