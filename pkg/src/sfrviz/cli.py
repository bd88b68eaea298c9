"""Command-line entry points for batch rendering, analysis, and serving."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .edges import route_edges
from .export import canonical_bytes, layout_export, render_svg, view_from_doc
from .fixtures import FIXTURE_KINDS, FixtureSpec, generate
from .graph import GraphError, OrderedDigraph, load_graph, serialize
from .grouping import ViewState, render_view
from .layout import layout_tree
from .loops import is_reducible, loop_forest
from .numbering import dfs_number, sfr_number

DEFAULT_PORT = 8000


def _load(path: str) -> OrderedDigraph:
    return load_graph(Path(path).read_bytes())


def _load_view(path: str | None) -> ViewState:
    if path is None:
        return ViewState()
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(doc, dict) and "view" in doc:
        doc = doc["view"]
    return view_from_doc(doc)


def cmd_render(args: argparse.Namespace) -> int:
    g = _load(args.graph)
    view = _load_view(args.view)
    rendered = render_view(g, view)
    export = layout_export(rendered)
    if args.svg:
        Path(args.svg).write_text(render_svg(export), encoding="utf-8")
        print(f"wrote {args.svg}")
    if args.export:
        Path(args.export).write_bytes(canonical_bytes(export))
        print(f"wrote {args.export}")
    if not args.svg and not args.export:
        sys.stdout.write(render_svg(export))
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    g = _load(args.graph)
    t = sfr_number(g)
    forest = loop_forest(g, t)
    print(f"{len(forest.loops)} loops, max nesting depth {forest.max_depth}")
    print(f"{'loop':>5} {'header':>7} {'parent':>7} {'size':>5}  body")
    for i, loop in enumerate(forest.loops):
        parent = loop.parent if loop.parent is not None else "-"
        body = ",".join(str(v) for v in sorted(loop.body))
        print(f"{i:>5} {loop.header:>7} {parent:>7} {len(loop.body):>5}  {body}")
    print()
    print(f"{'node':>6} {'depth':>6}")
    for v in t.order:
        print(f"{v:>6} {forest.depth[v]:>6}")
    print()
    print(f"reducible: {'true' if is_reducible(g, forest) else 'false'}")
    return 0


def cmd_number(args: argparse.Namespace) -> int:
    g = _load(args.graph)
    t = sfr_number(g) if args.mode == "sfr" else dfs_number(g)
    for v in t.order:
        print(f"{t.number[v]:>6} {v:>8}  {g.nodes[v].instruction_text}")
    return 0


def cmd_fixture(args: argparse.Namespace) -> int:
    fallthrough = None
    if args.fallthrough is not None:
        fallthrough = tuple(flag.strip() in ("1", "true", "yes") for flag in args.fallthrough.split(","))
    spec = FixtureSpec(
        kind=args.kind,
        branches=args.branches,
        fallthrough=fallthrough,
        depth=args.depth,
        fragment=args.fragment,
        copies=args.copies,
        seed=args.seed,
    )
    g = generate(spec)
    doc = json.dumps(serialize(g), indent=2, sort_keys=True)
    if args.output:
        Path(args.output).write_text(doc + "\n", encoding="utf-8")
        print(f"wrote {args.output}")
    else:
        print(doc)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    port = int(os.environ.get("SFRVIZ_PORT", args.port))
    uvicorn.run(create_app(ui_dir=args.ui), host=args.host, port=port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfrviz",
        description="Canonical control-flow-graph drawing and analysis",
    )
    parser.add_argument("--version", action="version", version=f"sfrviz {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="draw a graph as SVG and/or layout JSON")
    p.add_argument("graph", help="input graph document")
    p.add_argument("--svg", help="output SVG path")
    p.add_argument("--export", help="output canonical layout JSON path")
    p.add_argument("--view", help="session or view document to apply")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("analyze", help="print the loop forest and nesting depths")
    p.add_argument("graph")
    p.add_argument("--loops", action="store_true", help="included for clarity; the loop table is the default output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("number", help="print a vertex numbering")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("sfr", "dfs"), default="sfr")
    p.set_defaults(func=cmd_number)

    p = sub.add_parser("fixture", help="generate a canonical construct fixture")
    p.add_argument("kind", choices=FIXTURE_KINDS)
    p.add_argument("--branches", type=int, default=3)
    p.add_argument("--fallthrough", help="comma-separated flags, e.g. 1,0")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--fragment", default="if_else")
    p.add_argument("--copies", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("serve", help="run the session HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=DEFAULT_PORT,
                   help=f"default {DEFAULT_PORT}; the SFRVIZ_PORT environment variable wins over this flag")
    p.add_argument("--ui", help="directory with the built browser client to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
