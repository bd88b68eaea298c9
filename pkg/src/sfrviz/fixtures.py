"""Deterministic generators for the canonical control-flow constructs.

These stand in for analyzer output in tests and demos: the if-else
diamond, a switch with configurable fall-throughs, while and do-while
loops, nested loop towers, and graphs embedding several structurally
identical fragments (for checking that repeated code draws identically).
Every generated graph carries a synthetic method listing with real source
lines, so code-panel features are testable without any bytecode.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .graph import CfgNode, GraphError, OrderedDigraph

FIXTURE_KINDS = (
    "if_else",
    "switch",
    "while_loop",
    "do_while",
    "nested_loops",
    "duplicated",
)


class InvalidFixtureError(GraphError):
    pass


@dataclass(frozen=True)
class FixtureSpec:
    kind: str
    branches: int = 3
    fallthrough: Optional[tuple[bool, ...]] = None
    depth: int = 2
    fragment: str = "if_else"
    copies: int = 2
    seed: int = 0


def generate(spec: FixtureSpec) -> OrderedDigraph:
    if spec.kind == "if_else":
        return _if_else()
    if spec.kind == "switch":
        return _switch(spec.branches, spec.fallthrough)
    if spec.kind == "while_loop":
        return _while_loop()
    if spec.kind == "do_while":
        return _do_while()
    if spec.kind == "nested_loops":
        return _nested_loops(spec.depth)
    if spec.kind == "duplicated":
        return _duplicated(spec.fragment, spec.copies, spec.seed)
    raise InvalidFixtureError(f"unknown fixture kind {spec.kind!r}")


def _node(nid: int, text: str, index: int, line: int | None, method: str = "main") -> CfgNode:
    return CfgNode(
        id=nid,
        method_id=method,
        instruction_index=index,
        instruction_text=text,
        source_line=line,
    )


def _if_else() -> OrderedDigraph:
    listing = [
        "if (x > 0) {",
        "    y = x;",
        "} else {",
        "    y = -x;",
        "}",
        "return y;",
    ]
    nodes = [
        _node(1, "ifle else_branch", 0, 1),
        _node(2, "iload x; istore y", 1, 2),
        _node(3, "ineg x; istore y", 2, 4),
        _node(4, "iload y; ireturn", 3, 6),
    ]
    edges = {1: [2, 3], 2: [4], 3: [4]}
    return OrderedDigraph(nodes, edges, root=1, methods={"main": listing})


def _switch(branches: int, fallthrough: Optional[tuple[bool, ...]]) -> OrderedDigraph:
    if branches < 2:
        raise InvalidFixtureError("switch needs at least 2 branches")
    if fallthrough is None:
        fallthrough = (True,) + (False,) * (branches - 2)
    if len(fallthrough) != branches - 1:
        raise InvalidFixtureError(
            f"need {branches - 1} fall-through flags, got {len(fallthrough)}"
        )
    listing = ["switch (tag) {"]
    texts = {1: "iconst_1; istore r", 2: "invokevirtual handle", 3: "iconst_3; istore r"}
    nodes = [_node(1, f"tableswitch {branches}", 0, 1)]
    for b in range(1, branches + 1):
        listing.append(f"case {b}: r = op{b}(r);")
        text = texts.get(b, f"iconst_{b}; istore r")
        nodes.append(_node(b + 1, text, b, b + 1))
    listing.append("}")
    edges: dict[int, list[int]] = {1: [b + 1 for b in range(1, branches + 1)]}
    for b in range(1, branches):
        if fallthrough[b - 1]:
            edges[b + 1] = [b + 2]
    return OrderedDigraph(nodes, edges, root=1, methods={"main": listing})


def _while_loop() -> OrderedDigraph:
    listing = [
        "while (i < n) {",
        "    i++;",
        "}",
        "return acc;",
    ]
    nodes = [
        _node(1, "if_icmpge exit", 0, 1),
        _node(2, "iload acc; ireturn", 1, 4),
        _node(3, "iinc i 1; goto top", 2, 2),
    ]
    edges = {1: [2, 3], 3: [1]}  # loop exit first, then body
    return OrderedDigraph(nodes, edges, root=1, methods={"main": listing})


def _do_while() -> OrderedDigraph:
    listing = [
        "do {",
        "    i--;",
        "} while (i > 0);",
    ]
    nodes = [
        _node(1, "iload i", 0, 1),
        _node(2, "iinc i -1", 1, 2),
        _node(3, "ifgt start", 2, 3),
    ]
    edges = {1: [2], 2: [3], 3: [1]}
    return OrderedDigraph(nodes, edges, root=1, methods={"main": listing})


def _nested_loops(depth: int) -> OrderedDigraph:
    if depth < 1:
        raise InvalidFixtureError("nesting depth must be at least 1")
    entry = 1
    headers = list(range(2, depth + 2))
    body = depth + 2
    exit_ = depth + 3

    listing = ["init();"]
    listing += [f"while (c{i}) {{" for i in range(1, depth + 1)]
    listing += ["    work();", "return;"]

    nodes = [_node(entry, "invokestatic init", 0, 1)]
    for i, h in enumerate(headers, start=1):
        nodes.append(_node(h, f"if_icmpge exit_{i}", i, i + 1))
    nodes.append(_node(body, "invokestatic work", depth + 1, depth + 2))
    nodes.append(_node(exit_, "return", depth + 2, depth + 3))

    edges: dict[int, list[int]] = {entry: [headers[0]]}
    for i, h in enumerate(headers):
        nxt = headers[i + 1] if i + 1 < depth else body
        edges[h] = [nxt, exit_] if i == 0 else [nxt]
    edges[body] = list(reversed(headers))
    return OrderedDigraph(nodes, edges, root=1, methods={"main": listing})


def _duplicated(fragment: str, copies: int, seed: int) -> OrderedDigraph:
    if fragment == "duplicated":
        raise InvalidFixtureError("cannot nest duplicated fixtures")
    if fragment not in FIXTURE_KINDS:
        raise InvalidFixtureError(f"unknown fragment kind {fragment!r}")
    if copies < 2:
        raise InvalidFixtureError("need at least 2 copies")

    rng = random.Random(seed)
    template = generate(FixtureSpec(kind=fragment))

    listing = ["dispatch();"] + [f"call_{i}();" for i in range(1, copies + 1)]
    nodes = [_node(1, "invokestatic dispatch", 0, 1)]
    edges: dict[int, list[int]] = {1: []}
    methods: dict[str, list[str]] = {"main": listing}
    next_id = 2

    for i in range(1, copies + 1):
        parent = next_id
        next_id += 1
        nodes.append(_node(parent, f"invokevirtual call_{i}", i, i + 1))
        edges[1].append(parent)

        hook = parent
        for _ in range(rng.randint(0, 2)):  # padding varies context, not the fragment
            pad = next_id
            next_id += 1
            nodes.append(_node(pad, "nop", 0, None))
            edges[hook] = [pad]
            hook = pad

        method = f"copy{i}"
        offset = next_id - 1
        methods[method] = list(template.methods["main"])
        for nid in template.nodes:
            tnode = template.nodes[nid]
            nodes.append(
                CfgNode(
                    id=nid + offset,
                    method_id=method,
                    instruction_index=tnode.instruction_index,
                    instruction_text=tnode.instruction_text,
                    source_line=tnode.source_line,
                )
            )
        for nid, targets in template.out_edges.items():
            if targets:
                edges[nid + offset] = [tgt + offset for tgt in targets]
        edges[hook] = [template.root + offset]
        next_id = offset + 1 + max(template.nodes)

    return OrderedDigraph(nodes, edges, root=1, methods=methods)
