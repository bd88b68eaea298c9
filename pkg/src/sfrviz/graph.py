"""Ordered directed graph model for instruction-level control-flow graphs.

The graphs visualized here come from a static analyzer as a JSON document.
Two things about them are sacred and preserved through every transformation:

* out-edge lists are *ordered* (the order of the corresponding instructions
  in the bytecode), and
* there is exactly one root.

This module owns loading/validation, serialization, and the quotient
construction that contracts groups of nodes into super-nodes when the user
collapses part of the graph.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import jsonschema

# Node ids at or above this value are reserved for super-nodes created by
# quotient(); input documents must stay below it.
SUPER_ID_BASE = 1 << 40


class GraphError(Exception):
    """Base class for every error raised by this package."""


class LoadError(GraphError):
    """Invalid input document. `location` points at the offending element."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{message} (at {location})" if location else message)
        self.location = location


class MalformedDocumentError(LoadError):
    pass


class DuplicateNodeIdError(LoadError):
    pass


class UnknownEdgeTargetError(LoadError):
    pass


class MissingRootError(LoadError):
    pass


class UnknownNodeError(GraphError):
    def __init__(self, node_id: int):
        super().__init__(f"unknown node {node_id}")
        self.node_id = node_id


class OverlappingGroupsError(GraphError):
    pass


class GroupNotConnectedError(GraphError):
    pass


@dataclass(frozen=True)
class CfgNode:
    """One analyzer state: a single bytecode instruction in some method."""

    id: int
    method_id: str
    instruction_index: int
    instruction_text: str
    source_line: int | None = None
    is_library: bool = False


@dataclass(frozen=True)
class SuperNodeInfo:
    """Provenance of a quotient super-node."""

    label: str
    members: frozenset[int]
    kind: str = "user"


_DOCUMENT_SCHEMA = {
    "type": "object",
    "required": ["root", "nodes", "edges", "methods"],
    "additionalProperties": False,
    "properties": {
        "root": {"type": "integer", "minimum": 0},
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "method", "index", "text"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "method": {"type": "string"},
                    "index": {"type": "integer", "minimum": 0},
                    "text": {"type": "string"},
                    "line": {"type": ["integer", "null"], "minimum": 1},
                    "library": {"type": "boolean"},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["src", "dst"],
                "additionalProperties": False,
                "properties": {
                    "src": {"type": "integer", "minimum": 0},
                    "dst": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                },
            },
        },
        "methods": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "string"}},
        },
    },
}

_COMPILED_SCHEMA = jsonschema.Draft202012Validator(_DOCUMENT_SCHEMA)


class OrderedDigraph:
    """A rooted digraph with ordered out-edge lists and immutable node data.

    Instances are values: never mutated after construction, safe to share.
    `warnings` collects non-fatal findings (deduplicated parallel edges,
    nodes unreachable from the root); `unreachable` flags the latter so
    downstream numbering and layout can skip them.
    """

    def __init__(
        self,
        nodes: Iterable[CfgNode],
        out_edges: Mapping[int, Sequence[int]],
        root: int,
        methods: Mapping[str, Sequence[str]] | None = None,
        super_nodes: Mapping[int, SuperNodeInfo] | None = None,
        warnings: Iterable[str] = (),
    ):
        self.nodes: dict[int, CfgNode] = {}
        for node in nodes:
            if node.id in self.nodes:
                raise DuplicateNodeIdError(f"duplicate node id {node.id}", f"node {node.id}")
            self.nodes[node.id] = node
        if root not in self.nodes:
            raise MissingRootError(f"missing root: node {root} not present", "root")
        self.root = root
        self.methods: dict[str, tuple[str, ...]] = {
            name: tuple(lines) for name, lines in (methods or {}).items()
        }
        self.super_nodes: dict[int, SuperNodeInfo] = dict(super_nodes or {})

        warn = list(warnings)
        self.out_edges: dict[int, tuple[int, ...]] = {nid: () for nid in self.nodes}
        for src, targets in out_edges.items():
            if src not in self.nodes:
                raise UnknownEdgeTargetError(f"unknown edge source {src}", f"edge src {src}")
            seen: set[int] = set()
            kept: list[int] = []
            for dst in targets:
                if dst not in self.nodes:
                    raise UnknownEdgeTargetError(
                        f"unknown edge target {dst}", f"edge {src}->{dst}"
                    )
                if dst in seen:
                    warn.append(f"duplicate edge {src}->{dst} dropped")
                    continue
                seen.add(dst)
                kept.append(dst)
            self.out_edges[src] = tuple(kept)

        self.in_edges: dict[int, tuple[int, ...]] = self._compute_in_edges()
        self.reachable: frozenset[int] = self._compute_reachable()
        self.unreachable: frozenset[int] = frozenset(self.nodes) - self.reachable
        for nid in sorted(self.unreachable):
            warn.append(f"node {nid} unreachable from root")
        self.warnings: tuple[str, ...] = tuple(warn)

    def _compute_in_edges(self) -> dict[int, tuple[int, ...]]:
        preds: dict[int, list[int]] = {nid: [] for nid in self.nodes}
        for src in self.nodes:
            for dst in self.out_edges[src]:
                preds[dst].append(src)
        return {nid: tuple(srcs) for nid, srcs in preds.items()}

    def _compute_reachable(self) -> frozenset[int]:
        seen = {self.root}
        stack = [self.root]
        while stack:
            v = stack.pop()
            for w in self.out_edges[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def node_count(self) -> int:
        return len(self.nodes)

    def edge_count(self) -> int:
        return sum(len(t) for t in self.out_edges.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderedDigraph):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and self.out_edges == other.out_edges
            and self.root == other.root
            and self.methods == other.methods
        )

    def __repr__(self) -> str:
        return (
            f"OrderedDigraph(nodes={self.node_count()}, edges={self.edge_count()}, "
            f"root={self.root})"
        )


def load_graph(data: bytes | str) -> OrderedDigraph:
    """Parse and validate an input document into an OrderedDigraph.

    Raises MalformedDocumentError / DuplicateNodeIdError /
    UnknownEdgeTargetError / MissingRootError; duplicate parallel edges and
    unreachable nodes are demoted to warnings on the returned graph.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedDocumentError(f"invalid JSON: {exc}", "document") from exc
    return graph_from_dict(doc)


def graph_from_dict(doc: object) -> OrderedDigraph:
    """Build a graph from an already-parsed document."""
    error = jsonschema.exceptions.best_match(_COMPILED_SCHEMA.iter_errors(doc))
    if error is not None:
        path = "/".join(str(p) for p in error.absolute_path) or "document"
        raise MalformedDocumentError(error.message, path)
    assert isinstance(doc, dict)

    nodes = []
    for i, entry in enumerate(doc["nodes"]):
        if entry["id"] >= SUPER_ID_BASE:
            raise MalformedDocumentError(
                f"node id {entry['id']} is in the reserved super-node range", f"nodes/{i}"
            )
        nodes.append(
            CfgNode(
                id=entry["id"],
                method_id=entry["method"],
                instruction_index=entry["index"],
                instruction_text=entry["text"],
                source_line=entry.get("line"),
                is_library=entry.get("library", False),
            )
        )

    out_edges: dict[int, list[int]] = {}
    for i, entry in enumerate(doc["edges"]):
        if entry["src"] in out_edges:
            # Merge repeated src rows; order within each row is preserved.
            out_edges[entry["src"]].extend(entry["dst"])
        else:
            out_edges[entry["src"]] = list(entry["dst"])

    graph = OrderedDigraph(nodes, out_edges, doc["root"], doc["methods"])

    for node in graph.nodes.values():
        if node.source_line is not None:
            listing = graph.methods.get(node.method_id)
            if listing is None or not (1 <= node.source_line <= len(listing)):
                raise MalformedDocumentError(
                    f"source line {node.source_line} not in listing of "
                    f"method {node.method_id!r}",
                    f"node {node.id}",
                )
    return graph


def serialize(g: OrderedDigraph) -> dict:
    """Inverse of load_graph on valid graphs (field-for-field round trip)."""
    return {
        "root": g.root,
        "nodes": [
            {
                "id": n.id,
                "method": n.method_id,
                "index": n.instruction_index,
                "text": n.instruction_text,
                "line": n.source_line,
                "library": n.is_library,
            }
            for n in g.nodes.values()
        ],
        "edges": [
            {"src": nid, "dst": list(targets)}
            for nid, targets in g.out_edges.items()
            if targets
        ],
        "methods": {name: list(lines) for name, lines in g.methods.items()},
    }


def serialize_bytes(g: OrderedDigraph) -> bytes:
    return json.dumps(serialize(g), sort_keys=True, separators=(",", ":")).encode("utf-8")


def super_node_id(members: Iterable[int]) -> int:
    """Deterministic id for the super-node contracting `members`.

    A stable hash of the sorted member ids, mapped into the reserved high
    range, so that a view's node ids never depend on the order user actions
    were performed in.
    """
    key = ",".join(str(m) for m in sorted(members)).encode("ascii")
    digest = hashlib.sha256(key).digest()
    return SUPER_ID_BASE + int.from_bytes(digest[:8], "big") % SUPER_ID_BASE


def weakly_connected(g: OrderedDigraph, members: frozenset[int]) -> bool:
    """True if `members` induce a weakly connected subgraph of g."""
    if not members:
        return False
    adj: dict[int, set[int]] = {m: set() for m in members}
    for src in members:
        for dst in g.out_edges.get(src, ()):
            if dst in adj:
                adj[src].add(dst)
                adj[dst].add(src)
    start = next(iter(members))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(members)


def quotient(
    g: OrderedDigraph,
    groups: Sequence,
    order: Mapping[int, int] | None = None,
) -> OrderedDigraph:
    """Contract each group of nodes into one super-node.

    `groups` is a sequence of objects with `.label` and `.members`
    (and optionally `.kind`), pairwise disjoint and each weakly connected
    in g. Out-edges of a super-node are the concatenation of its members'
    out-edge lists taken in ascending canonical-number order (`order`,
    computed from g when not supplied), retargeted through the groups;
    edges internal to a group are dropped and duplicates are deduplicated
    keeping the first occurrence. Relative out-edge order of every
    surviving node is preserved.
    """
    groups = list(groups)
    if not groups:
        return OrderedDigraph(
            g.nodes.values(), g.out_edges, g.root, g.methods, warnings=g.warnings
        )

    if order is None:
        from .numbering import sfr_number  # layering: numbering builds on this module

        order = sfr_number(g).number

    member_of: dict[int, int] = {}  # node id -> index into groups
    for gi, group in enumerate(groups):
        members = frozenset(group.members)
        if not members:
            raise GroupNotConnectedError(f"group {group.label!r} is empty")
        for m in members:
            if m in member_of:
                raise OverlappingGroupsError(
                    f"overlapping groups: node {m} in {groups[member_of[m]].label!r} "
                    f"and {group.label!r}"
                )
            if m not in g.nodes:
                raise UnknownNodeError(m)
            member_of[m] = gi
        if not weakly_connected(g, members):
            raise GroupNotConnectedError(f"group {group.label!r} is not weakly connected")

    def sort_key(nid: int) -> tuple[int, int]:
        num = order.get(nid)
        return (0, num) if num is not None else (1, nid)

    super_ids: list[int] = []
    taken: set[int] = set()
    for group in sorted(groups, key=lambda gr: tuple(sorted(gr.members))):
        sid = super_node_id(group.members)
        while sid in taken:  # hash collision: probe deterministically
            sid += 1
        taken.add(sid)
        super_ids.append(sid)
    # Re-align ids with the original groups order.
    by_members = {frozenset(gr.members): sid
                  for gr, sid in zip(sorted(groups, key=lambda gr: tuple(sorted(gr.members))),
                                     super_ids)}
    sid_of: list[int] = [by_members[frozenset(gr.members)] for gr in groups]

    def image(nid: int) -> int:
        gi = member_of.get(nid)
        return nid if gi is None else sid_of[gi]

    new_nodes: list[CfgNode] = []
    emitted_supers: set[int] = set()
    for nid, node in g.nodes.items():
        gi = member_of.get(nid)
        if gi is None:
            new_nodes.append(node)
            continue
        sid = sid_of[gi]
        if sid in emitted_supers:
            continue
        emitted_supers.add(sid)
        group = groups[gi]
        entry = min(group.members, key=sort_key)
        entry_node = g.nodes[entry]
        new_nodes.append(
            CfgNode(
                id=sid,
                method_id=entry_node.method_id,
                instruction_index=entry_node.instruction_index,
                instruction_text=group.label,
                source_line=None,
                is_library=all(g.nodes[m].is_library for m in group.members),
            )
        )

    def retarget(targets: Iterable[int], drop: int | None) -> tuple[int, ...]:
        kept: list[int] = []
        seen: set[int] = set()
        for dst in targets:
            dimg = image(dst)
            if dimg == drop:  # edge internal to a collapsed group
                continue
            if dimg in seen:
                continue
            seen.add(dimg)
            kept.append(dimg)
        return tuple(kept)

    new_edges: dict[int, tuple[int, ...]] = {}
    for nid in g.nodes:
        if nid in member_of:
            continue
        new_edges[nid] = retarget(g.out_edges[nid], drop=None)
    for gi, group in enumerate(groups):
        sid = sid_of[gi]
        concat: list[int] = []
        for m in sorted(group.members, key=sort_key):
            concat.extend(g.out_edges[m])
        new_edges[sid] = retarget(concat, drop=sid)

    supers = dict(g.super_nodes)
    for gi, group in enumerate(groups):
        supers[sid_of[gi]] = SuperNodeInfo(
            label=group.label,
            members=frozenset(group.members),
            kind=getattr(group, "kind", "user"),
        )

    return OrderedDigraph(
        new_nodes,
        new_edges,
        image(g.root),
        g.methods,
        super_nodes=supers,
        warnings=g.warnings,
    )
