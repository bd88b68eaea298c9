from __future__ import annotations

import json
from pathlib import Path

import pytest

from sfrviz.export import (
    canonical_bytes,
    layout_export,
    render_svg,
    session_to_doc,
    view_from_doc,
    view_to_doc,
)
from sfrviz.fixtures import FixtureSpec, generate
from sfrviz.grouping import GroupSpec, ViewState, collapse, render_view

GOLDEN_DIR = Path(__file__).parent / "golden"

GOLDEN_FIXTURES = {
    "if_else": FixtureSpec("if_else"),
    "switch": FixtureSpec("switch", branches=3, fallthrough=(True, False)),
    "while_loop": FixtureSpec("while_loop"),
    "do_while": FixtureSpec("do_while"),
    "nested_loops_2": FixtureSpec("nested_loops", depth=2),
}


def _export_for(spec: FixtureSpec) -> dict:
    g = generate(spec)
    return layout_export(render_view(g, ViewState()))


def test_export_schema_fields(diamond):
    export = layout_export(render_view(diamond, ViewState()))
    assert set(export) == {"nodes", "edges", "warnings"}
    node = export["nodes"][0]
    assert set(node) == {
        "id", "sfr", "lane", "depth", "x", "y", "score", "color", "collapsed", "label",
    }
    edge = export["edges"][0]
    assert set(edge) == {"src", "dst", "kind", "shape"}
    assert set(edge["shape"]) == {"type", "points"}


def test_export_nodes_ordered_by_number(nested):
    export = layout_export(render_view(nested, ViewState()))
    sfrs = [n["sfr"] for n in export["nodes"]]
    assert sfrs == sorted(sfrs) == list(range(1, len(sfrs) + 1))


def test_export_canonical_bytes_sorted_keys(diamond):
    export = layout_export(render_view(diamond, ViewState()))
    raw = canonical_bytes(export)
    parsed = json.loads(raw)
    assert parsed == json.loads(json.dumps(export))
    assert raw == canonical_bytes(json.loads(raw))


def test_export_marks_collapsed_supers(diamond):
    view = collapse(diamond, ViewState(), GroupSpec("user", frozenset({2, 4}), "arm"))
    export = layout_export(render_view(diamond, view))
    collapsed = [n for n in export["nodes"] if n["collapsed"]]
    assert len(collapsed) == 1
    assert collapsed[0]["label"] == "arm"


def test_svg_contains_nodes_and_edges(diamond):
    export = layout_export(render_view(diamond, ViewState()))
    svg = render_svg(export)
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")
    assert svg.count("<rect") == 4
    assert svg.count("<line") == 4  # all diamond edges draw straight
    assert "<path" not in svg.replace('<path d="M 0 0 L 10 5 L 0 10 z"', "")


def test_svg_curved_edges_use_paths(while_loop):
    export = layout_export(render_view(while_loop, ViewState()))
    svg = render_svg(export)
    assert svg.count("<line") == 2
    assert 'Q' in svg


def test_svg_escapes_labels():
    from conftest import make_graph
    from sfrviz.graph import CfgNode, OrderedDigraph

    nodes = [CfgNode(0, "main", 0, 'if (a < b && c > "x")')]
    g = OrderedDigraph(nodes, {}, 0)
    svg = render_svg(layout_export(render_view(g, ViewState())))
    assert "&lt;" in svg and "&amp;" in svg
    assert 'a < b' not in svg


def test_svg_is_pure_function_of_export(nested):
    export = layout_export(render_view(nested, ViewState()))
    round_tripped = json.loads(canonical_bytes(export).decode("utf-8"))
    assert render_svg(export) == render_svg(round_tripped)


@pytest.mark.parametrize("name", sorted(GOLDEN_FIXTURES))
def test_golden_svg(name):
    export = _export_for(GOLDEN_FIXTURES[name])
    svg = render_svg(export)
    golden_path = GOLDEN_DIR / f"{name}.svg"
    assert golden_path.exists(), f"golden file missing; regenerate with tests/make_goldens.py"
    assert svg == golden_path.read_text(encoding="utf-8")


@pytest.mark.parametrize("name", sorted(GOLDEN_FIXTURES))
def test_golden_export_json(name):
    export = _export_for(GOLDEN_FIXTURES[name])
    golden_path = GOLDEN_DIR / f"{name}.json"
    assert golden_path.exists(), f"golden file missing; regenerate with tests/make_goldens.py"
    assert canonical_bytes(export) == golden_path.read_bytes()


def test_view_doc_round_trip(diamond):
    view = collapse(
        diamond,
        ViewState(),
        GroupSpec("user", frozenset({2, 4}), "arm", comment="note"),
    )
    doc = view_to_doc(view)
    assert view_from_doc(doc) == view
    assert json.dumps(doc)  # serializable


def test_session_doc_bundles_graph_and_view(diamond):
    doc = session_to_doc(diamond, ViewState())
    assert set(doc) == {"graph", "view"}
    from sfrviz.graph import graph_from_dict

    assert graph_from_dict(doc["graph"]) == diamond
