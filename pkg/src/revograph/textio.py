"""Text formats: state documents, action scripts, DOT export, structured docs.

The state document is line oriented and canonical on output so that fixtures
diff cleanly:

    # comment
    soa A
    principal B
    auth A B TT
    auth A C TF inactive
    neg A B

Scripts hold one action per line: ``do WLD A B``.

Structured output is JSON under a versioned ``schema`` key; the CLI, the HTTP
service and the web frontend all speak exactly this shape.
"""

from __future__ import annotations

import json
from typing import Iterable

from .errors import ParseError
from .model import (
    Action,
    Authorization,
    AuthorizationState,
    NegativeAuthorization,
    Permission,
    Scheme,
    perm_sort_key,
    validate_state,
)
from .transition import StepDelta

SCHEMA = "revograph/v1"

_SCHEMES_BY_TOKEN = {s.value: s for s in Scheme}
_PERMS_BY_TOKEN = {p.value: p for p in Permission}


def parse_spec(text: str) -> AuthorizationState:
    """Parse a state document; the result always passes validate_state."""
    soa: str | None = None
    principals: set[str] = set()
    auth_lines: list[tuple[int, list[str]]] = []
    neg_lines: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind == "soa":
            if len(args) != 1:
                raise ParseError("soa takes one principal", lineno)
            if soa is not None:
                raise ParseError("duplicate soa line", lineno, code="duplicate-soa")
            soa = args[0]
            principals.add(soa)
        elif kind == "principal":
            if len(args) != 1:
                raise ParseError("principal takes one name", lineno)
            principals.add(args[0])
        elif kind == "auth":
            auth_lines.append((lineno, args))
        elif kind == "neg":
            neg_lines.append((lineno, args))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if soa is None:
        raise ParseError("missing soa line", code="duplicate-soa")

    pos: set[Authorization] = set()
    for lineno, args in auth_lines:
        if len(args) not in (3, 4) or (len(args) == 4 and args[3] != "inactive"):
            raise ParseError("auth takes: grantor grantee perm [inactive]", lineno)
        g, e, ptok = args[0], args[1], args[2]
        if ptok not in _PERMS_BY_TOKEN:
            raise ParseError(f"unknown permission {ptok!r}", lineno)
        for who in (g, e):
            if who not in principals:
                raise ParseError(
                    f"unknown principal {who!r}", lineno, code="unknown-principal"
                )
        pos.add(Authorization(g, e, _PERMS_BY_TOKEN[ptok], active=len(args) == 3))
    neg: set[NegativeAuthorization] = set()
    for lineno, args in neg_lines:
        if len(args) != 2:
            raise ParseError("neg takes: grantor grantee", lineno)
        for who in args:
            if who not in principals:
                raise ParseError(
                    f"unknown principal {who!r}", lineno, code="unknown-principal"
                )
        neg.add(NegativeAuthorization(args[0], args[1]))

    state = AuthorizationState(
        soa=soa, principals=frozenset(principals), pos=frozenset(pos), neg=frozenset(neg)
    )
    issues = validate_state(state)
    if issues:
        raise ParseError(
            "; ".join(str(i) for i in issues), code="structural-error"
        )
    return state


def serialize_spec(state: AuthorizationState) -> str:
    """Canonical document: sorted principals, sorted edges, stable bytes."""
    lines = [f"soa {state.soa}"]
    for p in sorted(state.principals):
        if p != state.soa:
            lines.append(f"principal {p}")
    for a in state.sorted_pos():
        suffix = "" if a.active else " inactive"
        lines.append(f"auth {a.grantor} {a.grantee} {a.permission.value}{suffix}")
    for n in state.sorted_neg():
        lines.append(f"neg {n.grantor} {n.grantee}")
    return "\n".join(lines) + "\n"


def parse_script(text: str) -> list[Action]:
    """Parse an action script: lines of ``do <scheme> <actor> <target>``."""
    actions: list[Action] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "do":
            raise ParseError("expected: do <scheme> <actor> <target>", lineno)
        if parts[1] not in _SCHEMES_BY_TOKEN:
            raise ParseError(f"unknown scheme {parts[1]!r}", lineno)
        actions.append(Action(_SCHEMES_BY_TOKEN[parts[1]], parts[2], parts[3]))
    return actions


def serialize_script(actions: Iterable[Action]) -> str:
    return "".join(f"do {a.scheme.value} {a.actor} {a.target}\n" for a in actions)


def export_dot(state: AuthorizationState) -> str:
    """Deterministic DOT digraph.

    Active positive edges are solid and labelled ``+,b1,b2``; inactive ones
    dashed; negative edges solid and labelled ``-,F,F``.
    """
    lines = ["digraph authorization {", "  rankdir=LR;"]
    for p in sorted(state.principals):
        shape = "doublecircle" if p == state.soa else "box"
        lines.append(f'  "{p}" [shape={shape}];')
    for a in state.sorted_pos():
        b1 = "T" if a.permission.may_delegate else "F"
        b2 = "T" if a.permission.may_negate else "F"
        style = "solid" if a.active else "dashed"
        lines.append(
            f'  "{a.grantor}" -> "{a.grantee}" [label="+,{b1},{b2}", style={style}];'
        )
    for n in state.sorted_neg():
        lines.append(f'  "{n.grantor}" -> "{n.grantee}" [label="-,F,F", style=solid];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structured documents (JSON-ready dicts)

def state_doc(state: AuthorizationState) -> dict:
    return {
        "soa": state.soa,
        "principals": sorted(state.principals),
        "auth": [
            {
                "grantor": a.grantor,
                "grantee": a.grantee,
                "permission": a.permission.value,
                "active": a.active,
            }
            for a in state.sorted_pos()
        ],
        "neg": [
            {"grantor": n.grantor, "grantee": n.grantee} for n in state.sorted_neg()
        ],
    }


def delta_doc(delta: StepDelta) -> dict:
    def triples(ts):
        return [
            {"grantor": g, "grantee": e, "permission": p.value}
            for (g, e, p) in sorted(ts, key=lambda t: (t[0], t[1], perm_sort_key(t[2])))
        ]

    return {
        "deleted": triples(delta.deleted),
        "added": triples(delta.added),
        "inactivated": triples(delta.inactivated),
        "neg_added": [
            {"grantor": g, "grantee": e} for (g, e) in sorted(delta.neg_added)
        ],
    }


def action_doc(action: Action) -> dict:
    return {
        "scheme": action.scheme.value,
        "actor": action.actor,
        "target": action.target,
    }


def envelope(kind: str, **payload) -> dict:
    """Top-level structured document with the schema version stamped in."""
    doc = {"schema": SCHEMA, "kind": kind}
    doc.update(payload)
    return doc


def dump_structured(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
