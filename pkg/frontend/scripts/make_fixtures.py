"""Capture real server responses as JSON fixtures for the frontend tests.

Run from the repository root:  python frontend/scripts/make_fixtures.py
The frontend must only ever see data that crossed the HTTP boundary, so
these files are recorded from the actual API, not hand-written.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from sfrviz.fixtures import FixtureSpec, generate
from sfrviz.graph import serialize
from sfrviz.server import create_app

OUT_DIR = Path(__file__).resolve().parent.parent / "test" / "fixtures"


def dump(name: str, payload: dict) -> None:
    (OUT_DIR / name).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {name}")


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())

    diamond = client.post("/session", json=serialize(generate(FixtureSpec("if_else"))))
    sid = diamond.json()["id"]
    dump("diamond.layout.json", client.get(f"/session/{sid}/layout").json())
    dump("diamond.groups.json", client.get(f"/session/{sid}/groups").json())
    dump("diamond.node2.json", client.get(f"/session/{sid}/node/2").json())
    dump("diamond.node4.json", client.get(f"/session/{sid}/node/4").json())

    select = client.post(f"/session/{sid}/select", json={"revision": 0, "nodes": [2]})
    dump("diamond.select2.json", select.json())
    dump("diamond.code.main.json", client.get(f"/session/{sid}/code/main").json())

    collapse = client.post(
        f"/session/{sid}/collapse",
        json={"revision": 1, "group": {"members": [2, 4], "label": "arm"}},
    )
    assert collapse.status_code == 200, collapse.text
    dump("diamond.collapsed.layout.json", client.get(f"/session/{sid}/layout").json())

    wl = client.post("/session", json=serialize(generate(FixtureSpec("while_loop"))))
    wid = wl.json()["id"]
    dump("while_loop.layout.json", client.get(f"/session/{wid}/layout").json())


if __name__ == "__main__":
    main()
