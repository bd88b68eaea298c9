from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from sfrviz.numbering import dfs_number, sfr_number

from conftest import make_graph
from randgraphs import random_digraph


def test_sfr_diamond(diamond):
    t = sfr_number(diamond)
    assert t.number == {1: 1, 2: 2, 3: 3, 4: 4}
    assert t.parent[4] == 2
    assert t.children[1] == [2, 3]
    assert t.order == [1, 2, 3, 4]


def test_sfr_single_node():
    g = make_graph({}, root=0)
    t = sfr_number(g)
    assert t.number == {0: 1}
    assert t.children == {0: []}
    assert t.parent == {}


def test_sfr_switch_fallthrough(switch_fallthrough):
    t = sfr_number(switch_fallthrough)
    assert t.number == {1: 1, 2: 2, 3: 3, 4: 4}
    assert t.children[1] == [2, 3, 4]
    # the fall-through edge exists but is not a tree edge
    assert 3 in switch_fallthrough.out_edges[2]
    assert t.parent[3] == 1


def test_sfr_while(while_loop):
    t = sfr_number(while_loop)
    assert t.number == {1: 1, 2: 2, 3: 3}
    assert t.parent == {2: 1, 3: 1}
    # back edge body -> cond is not a tree edge
    assert 1 in while_loop.out_edges[3]


def test_sfr_do_while_single_path(do_while):
    t = sfr_number(do_while)
    assert t.number == {1: 1, 2: 2, 3: 3}
    assert t.children[1] == [2]
    assert t.children[2] == [3]
    assert t.children[3] == []
    assert 1 in do_while.out_edges[3]  # back edge, non-tree


def test_sfr_self_loop_on_root_is_non_tree():
    g = make_graph({0: [0, 1]})
    t = sfr_number(g)
    assert t.number == {0: 1, 1: 2}
    assert t.children[0] == [1]


def test_sfr_skips_unreachable():
    g = make_graph({0: [1], 2: [3]}, n=4)
    t = sfr_number(g)
    assert set(t.number) == {0, 1}


def test_dfs_switch_nests_fallthrough(switch_fallthrough):
    t = dfs_number(switch_fallthrough)
    assert t.number == {1: 1, 2: 2, 3: 3, 4: 4}
    assert t.parent[3] == 2  # second branch nested under the first


def test_dfs_diamond(diamond):
    t = dfs_number(diamond)
    assert t.number == {1: 1, 2: 2, 4: 3, 3: 4}


def test_dfs_single_node():
    g = make_graph({}, root=0)
    t = dfs_number(g)
    assert t.number == {0: 1}


def test_determinism():
    rng = random.Random(7)
    for _ in range(25):
        g = random_digraph(rng)
        a, b = sfr_number(g), sfr_number(g)
        assert a == b
        assert dfs_number(g) == dfs_number(g)


@st.composite
def ordered_digraphs(draw):
    n = draw(st.integers(min_value=1, max_value=30))
    edges = {}
    for i in range(n):
        edges[i] = draw(
            st.lists(st.integers(0, n - 1), max_size=6, unique=True)
        )
    return make_graph(edges, n=n)


@given(ordered_digraphs())
@settings(max_examples=150, deadline=None)
def test_children_hold_consecutive_numbers(g):
    t = sfr_number(g)
    # bijection onto 1..n over reachable nodes
    reachable = g.reachable
    assert set(t.number) == set(reachable)
    assert sorted(t.number.values()) == list(range(1, len(reachable) + 1))
    for v, kids in t.children.items():
        nums = [t.number[c] for c in kids]
        assert nums == sorted(nums)
        assert all(b - a == 1 for a, b in zip(nums, nums[1:]))


@given(ordered_digraphs())
@settings(max_examples=150, deadline=None)
def test_parent_links_reach_root_without_cycles(g):
    t = sfr_number(g)
    for v in t.number:
        seen = set()
        while v in t.parent:
            assert v not in seen
            seen.add(v)
            p = t.parent[v]
            assert v in g.out_edges[p]  # every tree edge is a graph edge
            assert t.number[p] < t.number[v]
            v = p
        assert v == g.root


@given(ordered_digraphs(), st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_permuting_out_edges_permutes_children(g, rng):
    t = sfr_number(g)
    v = rng.choice(list(t.number))
    perm = list(g.out_edges[v])
    rng.shuffle(perm)
    edges = {u: list(g.out_edges[u]) for u in g.nodes}
    edges[v] = perm
    g2 = make_graph(edges, n=len(g.nodes))
    t2 = sfr_number(g2)
    assert set(t2.children[v]) == set(t.children[v])
    expected = [w for w in perm if w in set(t.children[v])]
    assert t2.children[v] == expected
