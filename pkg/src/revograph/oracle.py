"""Differential oracle: the revocation procedures as sequential worklist passes.

This module re-implements every scheme from the semi-formal numbered
procedures, deliberately sharing no fixpoint machinery with the step engine:
chains are found by enumerating simple paths, and effects are applied as
eager passes (delete, then downgrade, then forward; repeat until quiet)
instead of as one simultaneous model.  Agreement between the two readings is
the correctness argument; disagreement is a finding to be recorded, never
explained away.

It also hosts the seeded random generator of reachable states used by the
verifier and the differential test suites.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable

from .errors import (
    GrantShadowedError,
    InvalidActionError,
    NoAuthorizationToRevokeError,
    UnauthorizedGrantError,
    UnauthorizedNegativeError,
    UnknownPrincipalError,
)
from .model import (
    DELETE_SCHEMES,
    GRANT_COMPAT,
    GRANT_SCHEMES,
    GRANTS_OF,
    NEG_ISSUERS,
    NEGATIVE_SCHEMES,
    PERMISSIONS,
    R_POS,
    STRONGER,
    WEAKER_EQ,
    Action,
    Authorization,
    AuthorizationState,
    NegativeAuthorization,
    Permission,
    Scheme,
    empty_state,
    scheme_sort_key,
)

Triple = tuple[str, str, Permission]


@lru_cache(maxsize=65536)
def _finals_by_node(
    pos_sig: frozenset[tuple[Triple, bool]], soa: str, active_only: bool
) -> dict[str, frozenset[Permission]]:
    """Final-edge permissions of simple rooted paths, for every node at once.

    Consecutive edges must be related by the grant relation; the first edge
    leaving the SOA is unconstrained.  One depth-first enumeration of simple
    paths covers all reachable nodes.
    """
    edges: dict[str, list[tuple[str, Permission]]] = {}
    for (g, e, p), active in pos_sig:
        if active_only and not active:
            continue
        edges.setdefault(g, []).append((e, p))
    finals: dict[str, set[Permission]] = {}

    def walk(node: str, last: Permission | None, seen: frozenset[str]) -> None:
        for (nxt, perm) in edges.get(node, ()):
            if nxt in seen:
                continue
            if last is not None and (last, perm) not in R_POS:
                continue
            got = finals.setdefault(nxt, set())
            if perm not in got:
                got.add(perm)
            walk(nxt, perm, seen | {nxt})

    walk(soa, None, frozenset({soa}))
    return {p: frozenset(s) for p, s in finals.items()}


def _held(pos, soa, p, active_only) -> set[Permission]:
    if p == soa:
        return set(WEAKER_EQ[Permission.TT])
    held: set[Permission] = set()
    finals = _finals_by_node(frozenset(pos.items()), soa, active_only)
    for f in finals.get(p, ()):
        held |= WEAKER_EQ[f]
    return held


def _grants(pos, soa, p, active_only) -> set[Permission]:
    out: set[Permission] = set()
    for h in _held(pos, soa, p, active_only):
        out |= GRANTS_OF[h]
    return out


@lru_cache(maxsize=65536)
def _ind_finals_by_node(
    triples: frozenset[Triple], soa: str, avoided: str
) -> dict[str, frozenset[Permission]]:
    """Final-edge permissions of rooted paths avoiding `avoided`.

    Independence paths traverse TT/TF edges only (regardless of activity) and
    must avoid `avoided` entirely.
    """
    edges: dict[str, list[tuple[str, Permission]]] = {}
    for (g, e, p) in triples:
        if p in (Permission.TT, Permission.TF) and g != avoided and e != avoided:
            edges.setdefault(g, []).append((e, p))
    finals: dict[str, set[Permission]] = {}

    def walk(node, last, seen):
        for (nxt, perm) in edges.get(node, ()):
            if nxt in seen:
                continue
            if last is not None and (last, perm) not in R_POS:
                continue
            got = finals.setdefault(nxt, set())
            if perm not in got:
                got.add(perm)
            walk(nxt, perm, seen | {nxt})

    if soa != avoided:
        walk(soa, None, frozenset({soa}))
    return {p: frozenset(s) for p, s in finals.items()}


def _ind_licensed(pos, soa, avoided: str, grantor: str) -> set[Permission]:
    """Permissions `grantor` may keep issuing despite avoiding `avoided`.

    The SOA is independent of everyone else, for every permission.
    """
    out: set[Permission] = set()
    if grantor == soa:
        if soa == avoided:
            return out
        for f in PERMISSIONS:
            out |= GRANTS_OF[f]
        return out
    finals = _ind_finals_by_node(frozenset(pos), soa, avoided)
    for f in finals.get(grantor, ()):
        out |= GRANTS_OF[f]
    return out


def _best_for_scheme(grants: set[Permission], scheme: Scheme) -> Permission | None:
    candidates = {a for a in grants if (a, scheme) in GRANT_COMPAT}
    best = [a for a in candidates if not any((b, a) in STRONGER for b in candidates)]
    if not best:
        return None
    assert len(best) == 1
    return best[0]


def validate_action_naive(state: AuthorizationState, action: Action) -> None:
    """Path-enumeration mirror of transition.validate_action."""
    for p in (action.actor, action.target):
        if p not in state.principals:
            raise UnknownPrincipalError(f"unknown principal {p!r}")
    if action.actor == action.target:
        raise InvalidActionError("actor and target must differ")
    pos = state.pos_map()
    if action.scheme in GRANT_SCHEMES:
        best = _best_for_scheme(
            _grants(pos, state.soa, action.actor, active_only=True), action.scheme
        )
        if best is None:
            raise UnauthorizedGrantError(
                f"{action.actor} cannot grant via {action.scheme.value}"
            )
        if pos.get((action.actor, action.target, best)) is False:
            raise GrantShadowedError("target triple exists inactive")
    elif action.scheme in DELETE_SCHEMES:
        if not any(
            g == action.actor and e == action.target for (g, e, _p) in pos
        ):
            raise NoAuthorizationToRevokeError(
                f"no positive authorization {action.actor} -> {action.target}"
            )
    else:
        if not _held(pos, state.soa, action.actor, active_only=True) & NEG_ISSUERS:
            raise UnauthorizedNegativeError(
                f"{action.actor} cannot issue negative authorizations"
            )


def oracle_apply(state: AuthorizationState, action: Action) -> AuthorizationState:
    """Apply one action by the numbered procedures, pass by pass."""
    validate_action_naive(state, action)
    if action.scheme in GRANT_SCHEMES:
        return _apply_grant(state, action)
    return _apply_revocation(state, action)


def _apply_grant(state: AuthorizationState, action: Action) -> AuthorizationState:
    pos = state.pos_map()
    best = _best_for_scheme(
        _grants(pos, state.soa, action.actor, active_only=True), action.scheme
    )
    triple = (action.actor, action.target, best)
    if triple in pos:  # re-grant of an existing active triple: set semantics
        return state
    pos[triple] = True
    return state.with_authorizations(pos, state.neg_pairs())


def _apply_revocation(state: AuthorizationState, action: Action) -> AuthorizationState:
    scheme, i, j = action.scheme, action.actor, action.target
    soa = state.soa
    deletes = scheme in DELETE_SCHEMES
    pos0 = state.pos_map()
    inact0 = {t for t, active in pos0.items() if not active}
    pre_active_grants = {
        p: _grants(pos0, soa, p, active_only=True) for p in state.principals
    }
    strong = scheme in (Scheme.SLD, Scheme.SGD, Scheme.SLN, Scheme.SGN)
    ind_lic = (
        {p: _ind_licensed(pos0, soa, i, p) for p in state.principals} if strong else {}
    )

    pos = dict(pos0)
    neg = set(state.neg_pairs())
    if not deletes:
        neg.add((i, j))

    def grants_all(p):
        return _grants(pos, soa, p, active_only=False)

    def grants_active(p):
        return _grants(pos, soa, p, active_only=True)

    def delete(t):
        if t in pos:
            del pos[t]

    def inactivate(t):
        if pos.get(t):
            pos[t] = False

    def add(t):
        if t not in pos:
            pos[t] = t not in inact0  # a once-inactivated triple stays inactive

    # the direct hit, and the strong sweep over other edges into the target
    for t in sorted(pos0, key=_triple_key):
        if t[0] == i and t[1] == j:
            (delete if deletes else inactivate)(t)
        elif strong and t[1] == j and t[2] not in ind_lic[t[0]]:
            (delete if deletes else inactivate)(t)

    bound = len(pos0) + len(state.principals) ** 2 + 8
    for _pass in range(bound):
        changed = False

        if scheme is Scheme.SGD:
            hit = {e for (g, e, p) in pos0 if (g, e, p) not in pos}
            for t in sorted(pos0, key=_triple_key):
                if t in pos and t[1] in hit and t[2] not in ind_lic[t[0]]:
                    delete(t)
                    changed = True
        if scheme is Scheme.SGN:
            hit = {
                e
                for (g, e, p), active in pos.items()
                if not active and (g, e, p) not in inact0
            }
            for t in sorted(pos0, key=_triple_key):
                if pos.get(t) and t[1] in hit and t[2] not in ind_lic[t[0]]:
                    inactivate(t)
                    changed = True

        # local schemes: the revoker re-issues what lost grantors can no
        # longer actively pass on.  This runs before the connectivity sweep
        # so that a forwarded edge keeps downstream grantors supported, as
        # the step-4 remark promises for principals other than the target.
        # The direct target is settled first.
        if scheme in (Scheme.WLD, Scheme.SLD, Scheme.WLN, Scheme.SLN):
            for z in [j] + sorted(state.principals - {j}):
                z_forwards = []
                for (g, k, a) in sorted(pos0, key=_triple_key):
                    if (
                        g == z
                        and k != i  # a self-authorization is forbidden
                        and a in pre_active_grants[z]
                        and a not in grants_active(z)
                        and (i, k, a) not in pos
                    ):
                        z_forwards.append((i, k, a))
                for t in z_forwards:
                    add(t)
                    changed = True

        # downgrade replacement: the strongest weaker permission the grantor
        # can still issue replaces an edge lost through entitlement loss
        for (g, e, a) in sorted(pos0, key=_triple_key):
            ga = grants_all(g)
            if a not in ga:
                a1 = _strongest_weaker(a, ga)
                if a1 is not None and (g, e, a1) not in pos:
                    add((g, e, a1))
                    changed = True
        if not deletes:
            for (g, e, a) in sorted(pos0, key=_triple_key):
                if g == i and e == j:
                    continue  # the action pair would be re-inactivated anyway
                gact = grants_active(g)
                if a not in gact:
                    a1 = _strongest_weaker(a, gact)
                    if a1 is not None and (g, e, a1) not in pos:
                        add((g, e, a1))
                        changed = True

        # connectivity repair: entitlement loss deletes (pre-state edges
        # only), active-entitlement loss inactivates any current edge;
        # inactive chains still prevent deletion
        for t in sorted(pos0, key=_triple_key):
            if t in pos and t[2] not in grants_all(t[0]):
                delete(t)
                changed = True
        for t in sorted(pos, key=_triple_key):
            if pos[t] and t[2] not in grants_active(t[0]):
                inactivate(t)
                changed = True
        # under a negative scheme, any actor-to-target edge present at the
        # end of the step is inactive, re-issued ones included
        if not deletes:
            for t in sorted(pos, key=_triple_key):
                if pos[t] and t[0] == i and t[1] == j:
                    inactivate(t)
                    changed = True

        if not changed:
            break
    else:
        raise AssertionError("oracle pass bound exceeded")

    return state.with_authorizations(pos, neg)


def _strongest_weaker(a: Permission, grants: set[Permission]) -> Permission | None:
    candidates = [a1 for a1 in grants if (a, a1) in STRONGER]
    best = [x for x in candidates if not any((y, x) in STRONGER for y in candidates)]
    if not best:
        return None
    best.sort(key=lambda p: p.value)
    return best[0] if len(best) == 1 else best[0]


def _triple_key(t: Triple):
    return (t[0], t[1], t[2].value)


def principal_names(n: int) -> list[str]:
    """A, B, C ... for small n; P1, P2, ... beyond the alphabet."""
    if n <= 26:
        return [chr(ord("A") + k) for k in range(n)]
    return [f"P{k + 1}" for k in range(n)]


def valid_actions(
    state: AuthorizationState, schemes: Iterable[Scheme] = tuple(Scheme)
) -> list[Action]:
    """All currently valid actions, in canonical order."""
    out = []
    for s in sorted(schemes, key=scheme_sort_key):
        for actor in sorted(state.principals):
            for target in sorted(state.principals):
                if actor == target:
                    continue
                action = Action(s, actor, target)
                try:
                    validate_action_naive(state, action)
                except Exception:
                    continue
                out.append(action)
    return out


def random_reachable_state(
    seed: int,
    n: int,
    depth: int,
    schemes: Iterable[Scheme] = tuple(Scheme),
) -> tuple[AuthorizationState, list[Action]]:
    """A state reached by `depth` random valid actions, plus its trace.

    Deterministic per seed.  When no valid action exists the trace simply
    ends early.
    """
    if n < 1 or depth < 0:
        raise ValueError("need n >= 1 and depth >= 0")
    names = principal_names(n)
    state = empty_state(names[0], names)
    rng = random.Random(seed)
    trace: list[Action] = []
    for _ in range(depth):
        candidates = valid_actions(state, schemes)
        if not candidates:
            break
        action = rng.choice(candidates)
        state = oracle_apply(state, action)
        trace.append(action)
    return state, trace
