"""Session HTTP API: one analyst, one graph, one evolving view per session.

Handlers are stateless over an immutable snapshot; every accepted mutation
(collapse, expand, select) replaces the snapshot and bumps the revision by
one. Mutating requests must carry the revision they were computed against
and are rejected with 409 when stale, so two clients can never silently
interleave edits. Reads never block reads.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Optional, Union

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import grouping, query
from .export import layout_export, render_svg, session_to_doc, view_from_doc
from .graph import (
    GraphError,
    GroupNotConnectedError,
    LoadError,
    OrderedDigraph,
    OverlappingGroupsError,
    UnknownNodeError,
    graph_from_dict,
)
from .grouping import GroupSpec, RenderedView, ViewState
from .numbering import sfr_number
from .query import Selection, SearchSyntaxError, UnknownMethodError

_NOT_FOUND_ERRORS = (UnknownNodeError, UnknownMethodError, grouping.UnknownGroupError)
_UNPROCESSABLE_ERRORS = (
    LoadError,
    OverlappingGroupsError,
    GroupNotConnectedError,
    grouping.InvalidGroupError,
    SearchSyntaxError,
)

_RENDER_CACHE_SIZE = 8


@dataclass(frozen=True)
class Snapshot:
    revision: int
    view: ViewState
    selection: Selection


@dataclass
class Session:
    graph: OrderedDigraph
    snapshot: Snapshot
    lock: threading.Lock = field(default_factory=threading.Lock)
    _renders: dict = field(default_factory=dict)

    def rendered(self, view: ViewState) -> RenderedView:
        key = frozenset(view.collapsed)
        hit = self._renders.get(key)
        if hit is None:
            hit = grouping.render_view(self.graph, view)
            if len(self._renders) >= _RENDER_CACHE_SIZE:
                self._renders.pop(next(iter(self._renders)))
            self._renders[key] = hit
        return hit


class GroupBody(BaseModel):
    kind: str = "user"
    members: list[int]
    label: str = ""
    comment: Optional[str] = None


class MutateGroupBody(BaseModel):
    revision: int
    group: Optional[GroupBody] = None
    ref: Optional[Union[int, str]] = None


class SelectBody(BaseModel):
    revision: int
    nodes: Optional[list[int]] = None
    method: Optional[str] = None
    lines: Optional[list[int]] = None


def create_app(ui_dir: str | None = None) -> FastAPI:
    """The session API; pass `ui_dir` to also serve the browser client."""
    app = FastAPI(title="sfrviz")
    sessions: dict[str, Session] = {}
    app.state.sessions = sessions

    @app.exception_handler(GraphError)
    def graph_error_handler(request: Request, exc: GraphError) -> JSONResponse:
        if isinstance(exc, _NOT_FOUND_ERRORS):
            status = 404
        elif isinstance(exc, _UNPROCESSABLE_ERRORS):
            status = 422
        else:
            status = 400
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    def get_session(sid: str) -> Session:
        session = sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid!r}")
        return session

    def check_revision(session: Session, revision: int) -> Snapshot:
        snap = session.snapshot
        if revision != snap.revision:
            raise HTTPException(
                status_code=409,
                detail=f"stale revision {revision}, current is {snap.revision}",
            )
        return snap

    def resolve_group(
        session: Session, snap: Snapshot, body: MutateGroupBody
    ) -> GroupSpec:
        if body.group is not None:
            return GroupSpec(
                kind=body.group.kind,
                members=frozenset(body.group.members),
                label=body.group.label,
                comment=body.group.comment,
            )
        if body.ref is None:
            raise HTTPException(status_code=422, detail="need either group or ref")
        rendered = session.rendered(snap.view)
        candidates = sorted(
            snap.view.active_groups,
            key=lambda s: (s.kind, s.label, tuple(sorted(s.members))),
        )
        if isinstance(body.ref, int):
            info = rendered.visible.super_nodes.get(body.ref)
            if info is not None and body.ref in rendered.visible.nodes:
                for spec in candidates:
                    if spec.members == info.members:
                        return spec
            raise grouping.UnknownGroupError(f"no group for node {body.ref}")
        for spec in candidates:
            if spec.label == body.ref:
                return spec
        raise grouping.UnknownGroupError(f"unknown group {body.ref!r}")

    @app.post("/session")
    def create_session(doc: dict) -> dict:
        if "graph" in doc:  # session document: graph plus saved view
            graph = graph_from_dict(doc["graph"])
            view = view_from_doc(doc.get("view", []))
        else:
            graph = graph_from_dict(doc)
            view = grouping.default_view(graph, sfr_number(graph))
        sid = uuid.uuid4().hex
        sessions[sid] = Session(
            graph=graph,
            snapshot=Snapshot(
                revision=0, view=view, selection=Selection(frozenset(), {})
            ),
        )
        return {"id": sid, "revision": 0}

    @app.get("/session/{sid}/layout")
    def get_layout(sid: str) -> dict:
        session = get_session(sid)
        snap = session.snapshot
        export = layout_export(session.rendered(snap.view))
        return {"revision": snap.revision, **export}

    @app.get("/session/{sid}/svg")
    def get_svg(sid: str) -> Response:
        session = get_session(sid)
        snap = session.snapshot
        svg = render_svg(layout_export(session.rendered(snap.view)))
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/session/{sid}/save")
    def save_session(sid: str) -> dict:
        session = get_session(sid)
        snap = session.snapshot
        doc = session_to_doc(session.graph, snap.view)
        return {"revision": snap.revision, **doc}

    @app.get("/session/{sid}/groups")
    def list_groups(sid: str) -> dict:
        session = get_session(sid)
        snap = session.snapshot
        rendered = session.rendered(snap.view)
        visible_supers = {
            info.members: sid_
            for sid_, info in rendered.visible.super_nodes.items()
            if sid_ in rendered.visible.nodes
        }
        groups = [
            {
                "kind": spec.kind,
                "members": sorted(spec.members),
                "label": spec.label,
                "comment": spec.comment,
                "expanded": spec in snap.view.expanded,
                "node": visible_supers.get(spec.members),
            }
            for spec in sorted(
                snap.view.active_groups,
                key=lambda s: (s.kind, s.label, tuple(sorted(s.members))),
            )
        ]
        return {"revision": snap.revision, "groups": groups}

    @app.post("/session/{sid}/collapse")
    def post_collapse(sid: str, body: MutateGroupBody) -> dict:
        session = get_session(sid)
        with session.lock:
            snap = check_revision(session, body.revision)
            spec = resolve_group(session, snap, body)
            new_view = grouping.collapse(session.graph, snap.view, spec)
            session.snapshot = Snapshot(
                revision=snap.revision + 1, view=new_view, selection=snap.selection
            )
        return {"revision": session.snapshot.revision}

    @app.post("/session/{sid}/expand")
    def post_expand(sid: str, body: MutateGroupBody) -> dict:
        session = get_session(sid)
        with session.lock:
            snap = check_revision(session, body.revision)
            spec = resolve_group(session, snap, body)
            new_view = grouping.expand(snap.view, spec)
            session.snapshot = Snapshot(
                revision=snap.revision + 1, view=new_view, selection=snap.selection
            )
        return {"revision": session.snapshot.revision}

    @app.get("/session/{sid}/search")
    def get_search(sid: str, kind: str, q: str) -> dict:
        session = get_session(sid)
        snap = session.snapshot
        rendered = session.rendered(snap.view)
        results = query.search(rendered.visible, rendered.tree, kind, q)
        return {"revision": snap.revision, "results": results}

    @app.get("/session/{sid}/node/{nid}")
    def get_node(sid: str, nid: int) -> dict:
        session = get_session(sid)
        snap = session.snapshot
        rendered = session.rendered(snap.view)
        visible = rendered.visible
        node = visible.nodes.get(nid)
        if node is None:
            raise UnknownNodeError(nid)
        info = visible.super_nodes.get(nid)
        neighborhood = query.edges_of(visible, rendered.tree, nid)
        color = rendered.score.color.get(nid)
        comment = None
        if info is not None:
            for spec in snap.view.active_groups:
                if spec.members == info.members and spec.comment:
                    comment = spec.comment
                    break
        return {
            "revision": snap.revision,
            "id": nid,
            "sfr": rendered.tree.number.get(nid),
            "method": node.method_id,
            "index": node.instruction_index,
            "text": node.instruction_text,
            "line": node.source_line,
            "library": node.is_library,
            "collapsed": info is not None,
            "label": info.label if info is not None else node.instruction_text,
            "comment": comment,
            "score": rendered.score.score.get(nid),
            "color": "#{:02x}{:02x}{:02x}".format(*color) if color else None,
            "incoming": neighborhood.incoming,
            "outgoing": neighborhood.outgoing,
            "warnings": neighborhood.warnings,
            "selected": nid in snap.selection.nodes,
        }

    @app.get("/session/{sid}/code/{method}")
    def get_code(sid: str, method: str) -> dict:
        session = get_session(sid)
        snap = session.snapshot
        rendered = session.rendered(snap.view)
        listing = session.graph.methods.get(method)
        if listing is None:
            raise UnknownMethodError(method)
        loop_lines = query.innermost_loop_lines(rendered.visible, rendered.score)
        return {
            "revision": snap.revision,
            "method": method,
            "lines": list(listing),
            "highlights": sorted(snap.selection.lines.get(method, ())),
            "loop_lines": sorted(loop_lines.get(method, ())),
        }

    @app.post("/session/{sid}/select")
    def post_select(sid: str, body: SelectBody) -> dict:
        session = get_session(sid)
        with session.lock:
            snap = check_revision(session, body.revision)
            rendered = session.rendered(snap.view)
            if body.nodes is not None:
                selection = query.make_selection(rendered.visible, body.nodes)
            elif body.method is not None:
                hits = query.lines_to_nodes(
                    rendered.visible, body.method, body.lines or []
                )
                selection = query.make_selection(rendered.visible, hits)
            else:
                selection = Selection(frozenset(), {})
            session.snapshot = Snapshot(
                revision=snap.revision + 1, view=snap.view, selection=selection
            )
        return {
            "revision": session.snapshot.revision,
            "nodes": sorted(selection.nodes),
            "lines": {m: sorted(ls) for m, ls in sorted(selection.lines.items())},
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        # Mounted last so the API routes above keep precedence.
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
