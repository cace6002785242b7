#!/usr/bin/env python3
"""Record service responses as fixtures for the frontend's tests.

Drives the real FastAPI app through one scripted session and writes the
responses (session and preview ids normalized to stable tokens) under
frontend/fixtures/.  Re-run after changing the structured schema:

    python scripts/record_ui_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from revograph.service import create_app

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "frontend" / "fixtures"

SIXP_DOC = (ROOT / "tests" / "data" / "six_principals.spec").read_text()


def dump(name, payload):
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / name).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {name}")


def normalize(doc, sid, previews):
    text = json.dumps(doc)
    text = text.replace(sid, "SID")
    for pid, token in previews.items():
        text = text.replace(pid, token)
    return json.loads(text)


def main():
    client = TestClient(create_app(session_ttl=3600, preview_ttl=3600))

    created = client.post("/sessions", json={"spec": SIXP_DOC})
    assert created.status_code == 201, created.text
    sid = created.json()["session"]
    previews: dict[str, str] = {}
    dump("create_session.json", normalize(created.json(), sid, previews))

    history = client.get(f"/sessions/{sid}/history")
    dump("history_initial.json", normalize(history.json(), sid, previews))

    invalid = client.post(
        f"/sessions/{sid}/actions",
        json={"scheme": "WLD", "actor": "C", "target": "B"},
    )
    assert invalid.status_code == 422
    dump("action_invalid.json", normalize(invalid.json(), sid, previews))

    wld = client.post(
        f"/sessions/{sid}/actions",
        json={"scheme": "WLD", "actor": "A", "target": "B"},
    )
    assert wld.status_code == 200
    dump("action_wld.json", normalize(wld.json(), sid, previews))

    truncated = client.post(f"/sessions/{sid}/truncate", json={"index": 0})
    assert truncated.status_code == 200
    dump("truncate_0.json", normalize(truncated.json(), sid, previews))

    plan = client.post(
        f"/sessions/{sid}/plan", json={"actor": "A", "goal": "!access(F)"}
    )
    assert plan.status_code == 200
    for k, result in enumerate(plan.json()["results"]):
        action = result["action"]
        token = f"PREVIEW-{action['scheme']}-{action['target']}"
        previews[result["preview"]] = token
        if action["scheme"] == "SGD" and action["target"] == "B":
            preview = client.get(f"/previews/{result['preview']}")
            assert preview.status_code == 200
            dump("preview_sgd_b.json", normalize(preview.json(), sid, previews))
    dump("plan_not_access_f.json", normalize(plan.json(), sid, previews))

    sgd = client.post(
        f"/sessions/{sid}/actions",
        json={"scheme": "SGD", "actor": "A", "target": "B"},
    )
    assert sgd.status_code == 200
    dump("action_sgd.json", normalize(sgd.json(), sid, previews))

    print("done")


if __name__ == "__main__":
    main()
