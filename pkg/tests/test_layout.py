from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfrviz.graph import UnknownNodeError
from sfrviz.layout import layout_tree, sublayout_of, subtree_nodes
from sfrviz.numbering import sfr_number

from conftest import make_graph
from randgraphs import random_tree_graph


def test_diamond_layout(diamond):
    t = sfr_number(diamond)
    l = layout_tree(t)
    assert l.lane == {1: 0, 2: 0, 3: 1, 4: 0}
    assert l.depth == {1: 0, 2: 1, 3: 1, 4: 2}
    assert l.width[1] == 2
    assert l.position[3] == (1.0, 1.0)


def test_chain_in_single_column():
    g = make_graph({0: [1], 1: [2]})
    l = layout_tree(sfr_number(g))
    assert l.lane == {0: 0, 1: 0, 2: 0}
    assert l.depth == {0: 0, 1: 1, 2: 2}


def test_switch_layout(switch_fallthrough):
    l = layout_tree(sfr_number(switch_fallthrough))
    assert l.lane == {1: 0, 2: 0, 3: 1, 4: 2}
    assert l.depth == {1: 0, 2: 1, 3: 1, 4: 1}


def test_parent_sits_over_first_child():
    g = make_graph({0: [1, 2], 1: [3, 4], 2: []})
    l = layout_tree(sfr_number(g))
    assert l.lane[0] == l.lane[1] == l.lane[3]
    assert l.lane[4] == 1
    assert l.lane[2] == 2


def _assert_lane_invariants(t, l):
    # sibling subtree intervals are disjoint, in children order
    for v, kids in t.children.items():
        cursor = l.lane[v]
        for c in kids:
            assert l.lane[c] == cursor
            cursor += l.width[c]
        assert cursor == l.lane[v] + l.width[v] or not kids
    # equal lane implies ancestor
    by_lane = {}
    for v in t.number:
        by_lane.setdefault(l.lane[v], []).append(v)
    ancestors = {}

    def is_ancestor(a, b):
        while b in t.parent:
            b = t.parent[b]
            if a == b:
                return True
        return False

    for lane_nodes in by_lane.values():
        lane_nodes.sort(key=l.depth.get)
        for a, b in zip(lane_nodes, lane_nodes[1:]):
            assert is_ancestor(a, b), (a, b)
    # depth is tree depth
    for v in t.number:
        expected = 0 if v not in t.parent else l.depth[t.parent[v]] + 1
        assert l.depth[v] == expected


def test_lane_invariants_random_trees():
    rng = random.Random(11)
    for _ in range(60):
        g = random_tree_graph(rng, max_n=120)
        t = sfr_number(g)
        l = layout_tree(t)
        _assert_lane_invariants(t, l)
        leaves = [v for v in t.number if not t.children[v]]
        assert l.width[g.root] == len(leaves)


@st.composite
def tree_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=80))
    edges = {i: [] for i in range(n)}
    for i in range(1, n):
        edges[draw(st.integers(0, i - 1))].append(i)
    return make_graph(edges, n=n)


@given(tree_graphs())
@settings(max_examples=100, deadline=None)
def test_lane_exclusivity_property(g):
    t = sfr_number(g)
    l = layout_tree(t)
    _assert_lane_invariants(t, l)


def test_sublayout_of_root_is_identity(diamond):
    t = sfr_number(diamond)
    l = layout_tree(t)
    sub = sublayout_of(l, t, 1)
    assert sub.lane == l.lane
    assert sub.depth == l.depth
    assert sub.position == l.position


def test_sublayout_of_branch(diamond):
    t = sfr_number(diamond)
    l = layout_tree(t)
    sub = sublayout_of(l, t, 2)
    assert set(sub.lane) == {2, 4}
    assert sub.lane == {2: 0, 4: 0}
    assert sub.depth == {2: 0, 4: 1}
    assert sub.position[4] == (0.0, 1.0)


def test_sublayout_unknown_node(diamond):
    t = sfr_number(diamond)
    l = layout_tree(t)
    with pytest.raises(UnknownNodeError):
        sublayout_of(l, t, 99)


def _shapes_equal(t1, v1, t2, v2):
    """Ordered-tree shape equality via parallel traversal."""
    k1, k2 = t1.children[v1], t2.children[v2]
    if len(k1) != len(k2):
        return False
    return all(_shapes_equal(t1, a, t2, b) for a, b in zip(k1, k2))


def test_isomorphic_subtrees_have_identical_sublayouts():
    # two copies of the same three-node fan under different parents
    g = make_graph({0: [1, 2], 1: [3], 2: [4], 3: [5, 6], 4: [7, 8]})
    t = sfr_number(g)
    l = layout_tree(t)
    assert _shapes_equal(t, 3, t, 4)
    sub_a = sublayout_of(l, t, 3)
    sub_b = sublayout_of(l, t, 4)

    def mapped(sub, root):
        order = sorted(sub.lane, key=t.number.__getitem__)
        return [(sub.lane[v], sub.depth[v], sub.width[v]) for v in order]

    assert mapped(sub_a, 3) == mapped(sub_b, 4)


def test_layout_deterministic(nested):
    t = sfr_number(nested)
    assert layout_tree(t) == layout_tree(t)


def test_subtree_nodes_order(diamond):
    t = sfr_number(diamond)
    assert subtree_nodes(t, 1) == [1, 2, 3, 4]
    assert subtree_nodes(t, 2) == [2, 4]
