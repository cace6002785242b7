"""HTTP facade: sessions of state history with apply, rewind, query, plan, verify.

Sessions are in-memory.  Every mutation of a session happens under that
session's lock; reads only ever observe fully applied history entries.
Plan previews are retrievable by id until their TTL passes.  All payloads
use the structured schema from textio, and rejected actions return 422 with
the domain error code verbatim, leaving history untouched.

Run with:  uvicorn 'revograph.service:create_app()' --factory
Configuration comes from keyword arguments or REVOGRAPH_* environment
variables (SESSION_TTL, PREVIEW_TTL, VERIFY_STATE_CAP, all numeric).
"""

from __future__ import annotations

import os
import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import textio
from .errors import (
    ActionError,
    GoalError,
    NonTotalModelError,
    ParseError,
    ResourceBoundExceededError,
    UnknownPrincipalError,
)
from .model import Action, AuthorizationState, Scheme
from .planner import parse_goal, plan
from .semantics import ChainMode, query_access, query_holders
from .model import Permission
from .transition import StepDelta, apply_action
from .verifier import Invariant, VerifyMode, verify_step_invariant


@dataclass
class HistoryEntry:
    state: AuthorizationState
    action: Action | None  # None for the initial entry
    delta: StepDelta | None


@dataclass
class Session:
    id: str
    history: list[HistoryEntry]
    created: float
    modified: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, session_ttl: float, preview_ttl: float):
        self.session_ttl = session_ttl
        self.preview_ttl = preview_ttl
        self._sessions: dict[str, Session] = {}
        self._previews: dict[str, tuple[AuthorizationState, float]] = {}
        self._lock = threading.Lock()

    def create(self, state: AuthorizationState) -> Session:
        now = time.monotonic()
        session = Session(
            id=uuid.uuid4().hex,
            history=[HistoryEntry(state, None, None)],
            created=now,
            modified=now,
        )
        with self._lock:
            self._evict(now)
            self._sessions[session.id] = session
        return session

    def get(self, sid: str) -> Session | None:
        now = time.monotonic()
        with self._lock:
            self._evict(now)
            session = self._sessions.get(sid)
            if session:
                session.modified = now
            return session

    def put_preview(self, state: AuthorizationState) -> str:
        pid = uuid.uuid4().hex
        with self._lock:
            self._previews[pid] = (state, time.monotonic() + self.preview_ttl)
        return pid

    def get_preview(self, pid: str) -> AuthorizationState | None:
        with self._lock:
            entry = self._previews.get(pid)
            if not entry:
                return None
            state, expiry = entry
            if time.monotonic() > expiry:
                del self._previews[pid]
                return None
            return state

    def _evict(self, now: float) -> None:
        dead = [
            sid
            for sid, s in self._sessions.items()
            if now - s.modified > self.session_ttl
        ]
        for sid in dead:
            del self._sessions[sid]
        stale = [pid for pid, (_s, exp) in self._previews.items() if now > exp]
        for pid in stale:
            del self._previews[pid]


class CreateSessionBody(BaseModel):
    spec: str


class ActionBody(BaseModel):
    scheme: str
    actor: str
    target: str


class TruncateBody(BaseModel):
    index: int


class PlanBody(BaseModel):
    actor: str
    goal: str


class VerifyBody(BaseModel):
    invariant: str
    mode: str = "EXHAUSTIVE"
    depth: int | None = None
    samples: int | None = None
    seed: int = 0


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"schema": textio.SCHEMA, "error": code, "message": message},
    )


def create_app(
    session_ttl: float | None = None,
    preview_ttl: float | None = None,
    verify_state_cap: int | None = None,
) -> FastAPI:
    session_ttl = session_ttl or float(os.environ.get("REVOGRAPH_SESSION_TTL", 3600))
    preview_ttl = preview_ttl or float(os.environ.get("REVOGRAPH_PREVIEW_TTL", 600))
    verify_state_cap = verify_state_cap or int(
        os.environ.get("REVOGRAPH_VERIFY_STATE_CAP", 10**6)
    )
    app = FastAPI(title="revograph", version="0.1.0")
    store = SessionStore(session_ttl, preview_ttl)
    app.state.store = store

    @app.exception_handler(RequestValidationError)
    async def malformed(_request: Request, exc: RequestValidationError):
        return _error(400, "malformed-body", str(exc.errors()[:3]))

    def need_session(sid: str) -> Session | None:
        return store.get(sid)

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        try:
            state = textio.parse_spec(body.spec)
        except ParseError as exc:
            return _error(400, exc.code, str(exc))
        session = store.create(state)
        return {
            "schema": textio.SCHEMA,
            "session": session.id,
            "state": textio.state_doc(state),
        }

    @app.get("/sessions/{sid}/state")
    def get_state(sid: str):
        session = need_session(sid)
        if not session:
            return _error(404, "unknown-session", sid)
        entry = session.history[-1]
        return {
            "schema": textio.SCHEMA,
            "index": len(session.history) - 1,
            "state": textio.state_doc(entry.state),
        }

    @app.get("/sessions/{sid}/history")
    def get_history(sid: str):
        session = need_session(sid)
        if not session:
            return _error(404, "unknown-session", sid)
        entries = [
            {
                "index": k,
                "action": textio.action_doc(e.action) if e.action else None,
                "state": textio.state_doc(e.state),
                "delta": textio.delta_doc(e.delta) if e.delta else None,
            }
            for k, e in enumerate(session.history)
        ]
        return {"schema": textio.SCHEMA, "entries": entries}

    @app.get("/sessions/{sid}/dot")
    def get_dot(sid: str, index: int = -1):
        session = need_session(sid)
        if not session:
            return _error(404, "unknown-session", sid)
        try:
            entry = session.history[index]
        except IndexError:
            return _error(404, "unknown-index", str(index))
        return {"schema": textio.SCHEMA, "dot": textio.export_dot(entry.state)}

    @app.get("/sessions/{sid}/snapshot")
    def get_snapshot(sid: str):
        session = need_session(sid)
        if not session:
            return _error(404, "unknown-session", sid)
        script = textio.serialize_script(
            e.action for e in session.history[1:] if e.action
        )
        return {
            "schema": textio.SCHEMA,
            "spec": textio.serialize_spec(session.history[0].state),
            "script": script,
        }

    @app.post("/sessions/{sid}/actions")
    def post_action(sid: str, body: ActionBody):
        session = need_session(sid)
        if not session:
            return _error(404, "unknown-session", sid)
        schemes = {s.value: s for s in Scheme}
        if body.scheme not in schemes:
            return _error(400, "unknown-scheme", body.scheme)
        action = Action(schemes[body.scheme], body.actor, body.target)
        with session.lock:
            state = session.history[-1].state
            try:
                post, delta = apply_action(state, action)
            except (ActionError, UnknownPrincipalError, NonTotalModelError) as exc:
                return _error(422, exc.code, str(exc))
            session.history.append(HistoryEntry(post, action, delta))
        return {
            "schema": textio.SCHEMA,
            "index": len(session.history) - 1,
            "state": textio.state_doc(post),
            "delta": textio.delta_doc(delta),
        }

    @app.post("/sessions/{sid}/truncate")
    def post_truncate(sid: str, body: TruncateBody):
        session = need_session(sid)
        if not session:
            return _error(404, "unknown-session", sid)
        with session.lock:
            if not 0 <= body.index < len(session.history):
                return _error(422, "bad-index", str(body.index))
            del session.history[body.index + 1 :]
            state = session.history[-1].state
        return {
            "schema": textio.SCHEMA,
            "index": body.index,
            "state": textio.state_doc(state),
        }

    @app.get("/sessions/{sid}/query")
    def get_query(sid: str, kind: str, perm: str | None = None, mode: str = "ALL"):
        session = need_session(sid)
        if not session:
            return _error(404, "unknown-session", sid)
        state = session.history[-1].state
        if kind == "access":
            principals = sorted(query_access(state))
        elif kind == "holders":
            if perm not in Permission.__members__:
                return _error(400, "unknown-permission", str(perm))
            if mode not in ChainMode.__members__:
                return _error(400, "unknown-mode", mode)
            principals = sorted(
                query_holders(state, Permission[perm], ChainMode[mode])
            )
        else:
            return _error(400, "unknown-query", kind)
        return {
            "schema": textio.SCHEMA,
            "kind": kind,
            "perm": perm,
            "principals": principals,
        }

    @app.post("/sessions/{sid}/plan")
    def post_plan(sid: str, body: PlanBody):
        session = need_session(sid)
        if not session:
            return _error(404, "unknown-session", sid)
        state = session.history[-1].state
        try:
            goal = parse_goal(body.goal)
            results = plan(state, body.actor, goal)
        except (GoalError, UnknownPrincipalError) as exc:
            status = 422 if isinstance(exc, UnknownPrincipalError) else 400
            return _error(status, exc.code, str(exc))
        return {
            "schema": textio.SCHEMA,
            "actor": body.actor,
            "goal": str(goal),
            "results": [
                {
                    "action": textio.action_doc(r.action),
                    "cost": r.cost,
                    "preview": store.put_preview(r.post_state),
                }
                for r in results
            ],
        }

    @app.get("/previews/{pid}")
    def get_preview(pid: str):
        state = store.get_preview(pid)
        if state is None:
            return _error(404, "unknown-preview", pid)
        return {
            "schema": textio.SCHEMA,
            "state": textio.state_doc(state),
            "dot": textio.export_dot(state),
        }

    @app.post("/sessions/{sid}/verify")
    def post_verify(sid: str, body: VerifyBody):
        session = need_session(sid)
        if not session:
            return _error(404, "unknown-session", sid)
        state = session.history[-1].state
        try:
            invariant = Invariant(body.invariant)
            mode = VerifyMode(body.mode)
        except ValueError as exc:
            return _error(400, "bad-verify-params", str(exc))
        try:
            report = verify_step_invariant(
                invariant,
                len(state.principals),
                mode,
                depth=body.depth,
                samples=body.samples,
                seed=body.seed,
                root=state if mode is VerifyMode.EXHAUSTIVE else None,
                state_cap=verify_state_cap,
            )
        except ResourceBoundExceededError as exc:
            return _error(422, exc.code, str(exc))
        doc = {
            "schema": textio.SCHEMA,
            "invariant": report.invariant,
            "mode": report.mode,
            "result": report.result,
            "states_checked": report.states_checked,
            "steps_checked": report.steps_checked,
            "undefined_steps": len(report.undefined_steps),
        }
        if report.witness:
            doc["witness"] = {
                "state": textio.state_doc(report.witness.state),
                "action": textio.action_doc(report.witness.action),
                "violations": [str(v) for v in report.witness.violations],
            }
        return doc

    return app


def main() -> None:  # pragma: no cover - thin launcher
    import uvicorn

    uvicorn.run(
        create_app(),
        host=os.environ.get("REVOGRAPH_BIND", "127.0.0.1"),
        port=int(os.environ.get("REVOGRAPH_PORT", 8000)),
    )


if __name__ == "__main__":  # pragma: no cover
    main()
