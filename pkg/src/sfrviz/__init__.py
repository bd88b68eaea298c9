"""Canonical control-flow-graph visualization and loop-nesting analysis."""

from .edges import EdgeRoute, route_edges
from .fixtures import FixtureSpec, generate
from .graph import (
    CfgNode,
    GraphError,
    OrderedDigraph,
    graph_from_dict,
    load_graph,
    quotient,
    serialize,
)
from .grouping import (
    GroupSpec,
    RenderedView,
    ViewState,
    collapse,
    default_view,
    expand,
    render_view,
)
from .layout import LayoutResult, layout_tree, sublayout_of
from .loops import LoopForest, NodeScore, is_reducible, loop_forest, score_nodes
from .numbering import SfrResult, dfs_number, sfr_number
from .query import edges_of, lines_to_nodes, nodes_to_lines, search

__version__ = "0.1.0"

__all__ = [
    "CfgNode",
    "EdgeRoute",
    "FixtureSpec",
    "GraphError",
    "GroupSpec",
    "LayoutResult",
    "LoopForest",
    "NodeScore",
    "OrderedDigraph",
    "RenderedView",
    "SfrResult",
    "ViewState",
    "collapse",
    "default_view",
    "dfs_number",
    "edges_of",
    "expand",
    "generate",
    "graph_from_dict",
    "is_reducible",
    "layout_tree",
    "lines_to_nodes",
    "load_graph",
    "loop_forest",
    "nodes_to_lines",
    "quotient",
    "render_view",
    "route_edges",
    "score_nodes",
    "search",
    "serialize",
    "sfr_number",
    "sublayout_of",
    "__version__",
]
