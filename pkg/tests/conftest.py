from __future__ import annotations

import pytest

from sfrviz.fixtures import FixtureSpec, generate
from sfrviz.graph import CfgNode, OrderedDigraph


@pytest.fixture
def diamond():
    return generate(FixtureSpec("if_else"))


@pytest.fixture
def switch_fallthrough():
    return generate(FixtureSpec("switch", branches=3, fallthrough=(True, False)))


@pytest.fixture
def while_loop():
    return generate(FixtureSpec("while_loop"))


@pytest.fixture
def do_while():
    return generate(FixtureSpec("do_while"))


@pytest.fixture
def nested():
    return generate(FixtureSpec("nested_loops", depth=2))


def make_graph(edges, root=0, n=None, method="main", library=()):
    """Small-graph helper: edges as {src: [dst, ...]}, nodes inferred."""
    ids = set(edges)
    for targets in edges.values():
        ids.update(targets)
    if n is not None:
        ids.update(range(n))
    ids.add(root)
    nodes = [
        CfgNode(
            id=i,
            method_id=method,
            instruction_index=i,
            instruction_text=f"op {i}",
            is_library=i in library,
        )
        for i in sorted(ids)
    ]
    return OrderedDigraph(nodes, edges, root)
