from __future__ import annotations

import pytest

from sfrviz.fixtures import FIXTURE_KINDS, FixtureSpec, InvalidFixtureError, generate
from sfrviz.graph import serialize
from sfrviz.layout import layout_tree, sublayout_of, subtree_nodes
from sfrviz.loops import loop_forest
from sfrviz.numbering import sfr_number


def test_if_else_shape():
    g = generate(FixtureSpec("if_else"))
    assert g.node_count() == 4
    assert g.out_edges[1] == (2, 3)  # true branch first
    t = sfr_number(g)
    assert t.children[1] == [2, 3]


def test_switch_branches_are_siblings():
    g = generate(FixtureSpec("switch", branches=4, fallthrough=(True, True, False)))
    t = sfr_number(g)
    assert t.children[1] == [2, 3, 4, 5]
    assert g.out_edges[2] == (3,)
    assert g.out_edges[3] == (4,)


def test_while_exit_before_body():
    g = generate(FixtureSpec("while_loop"))
    assert g.out_edges[1] == (2, 3)
    assert g.out_edges[3] == (1,)


def test_do_while_single_path_with_back_edge():
    g = generate(FixtureSpec("do_while"))
    t = sfr_number(g)
    assert t.children == {1: [2], 2: [3], 3: []}
    assert g.out_edges[3] == (1,)


def test_nested_loops_matches_reference_shape():
    g = generate(FixtureSpec("nested_loops", depth=2))
    assert {k: list(v) for k, v in g.out_edges.items() if v} == {
        1: [2],
        2: [3, 5],
        3: [4],
        4: [3, 2],
    }


def test_nested_loops_depth_one():
    g = generate(FixtureSpec("nested_loops", depth=1))
    f = loop_forest(g, sfr_number(g))
    assert len(f.loops) == 1
    assert f.max_depth == 1


def test_nested_loops_deeper():
    g = generate(FixtureSpec("nested_loops", depth=4))
    f = loop_forest(g, sfr_number(g))
    assert f.max_depth == 4
    assert len(f.loops) == 4


def test_fixture_determinism():
    for kind in FIXTURE_KINDS:
        a = serialize(generate(FixtureSpec(kind, seed=5)))
        b = serialize(generate(FixtureSpec(kind, seed=5)))
        assert a == b


def test_duplicated_seed_varies_padding_not_fragments():
    sizes = {
        generate(FixtureSpec("duplicated", fragment="if_else", copies=2, seed=s)).node_count()
        for s in range(6)
    }
    assert len(sizes) > 1  # padding depends on the seed
    g = generate(FixtureSpec("duplicated", fragment="if_else", copies=2, seed=4))
    assert g.methods["copy1"] == g.methods["copy2"]  # fragments stay identical


def test_source_lines_index_real_listing_lines():
    for kind in FIXTURE_KINDS:
        g = generate(FixtureSpec(kind))
        for node in g.nodes.values():
            if node.source_line is not None:
                listing = g.methods[node.method_id]
                assert 1 <= node.source_line <= len(listing)


def _fragment_entries(g, t, copies):
    entries = []
    for i in range(1, copies + 1):
        method = f"copy{i}"
        members = {nid for nid, n in g.nodes.items() if n.method_id == method}
        entries.append(min(members, key=t.number.__getitem__))
    return entries


@pytest.mark.parametrize("fragment,copies", [("if_else", 2), ("while_loop", 3)])
def test_duplicated_fragments_are_congruent(fragment, copies):
    g = generate(FixtureSpec("duplicated", fragment=fragment, copies=copies, seed=3))
    t = sfr_number(g)
    lay = layout_tree(t)
    entries = _fragment_entries(g, t, copies)
    subs = [sublayout_of(lay, t, e) for e in entries]
    shapes = []
    for entry, sub in zip(entries, subs):
        members = sorted(sub.lane, key=t.number.__getitem__)
        shapes.append([(sub.lane[v], sub.depth[v], sub.width[v]) for v in members])
    assert all(s == shapes[0] for s in shapes[1:])


def test_duplicated_subtree_is_exactly_the_fragment():
    g = generate(FixtureSpec("duplicated", fragment="if_else", copies=2, seed=0))
    t = sfr_number(g)
    for entry in _fragment_entries(g, t, 2):
        method = g.nodes[entry].method_id
        members = {nid for nid, n in g.nodes.items() if n.method_id == method}
        assert set(subtree_nodes(t, entry)) == members


def test_invalid_specs_rejected():
    with pytest.raises(InvalidFixtureError):
        generate(FixtureSpec("switch", branches=1))
    with pytest.raises(InvalidFixtureError):
        generate(FixtureSpec("nested_loops", depth=0))
    with pytest.raises(InvalidFixtureError):
        generate(FixtureSpec("duplicated", copies=1))
    with pytest.raises(InvalidFixtureError):
        generate(FixtureSpec("duplicated", fragment="duplicated"))
    with pytest.raises(InvalidFixtureError):
        generate(FixtureSpec("mystery"))
    with pytest.raises(InvalidFixtureError):
        generate(FixtureSpec("switch", branches=3, fallthrough=(True,)))
