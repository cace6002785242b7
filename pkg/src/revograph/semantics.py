"""Derived predicates over one authorization state.

Everything here is a least fixpoint over (principal, permission) pairs:

* a principal *holds* a permission when an SOA-rooted delegation chain
  reaches it (the SOA holds TT outright; holding a permission implies holding
  every weaker one);
* *can grant* follows from holding via the grant relation;
* *independent of i* means an SOA-rooted chain avoiding i reaches the
  principal, where the recursion (deliberately) only traverses TT/TF edges;
* *access right* requires an active chain.

Negative authorizations never enter these computations: conflicts are
resolved positive-takes-precedence, so a negative edge only matters through
the inactivations it caused when it was issued.
"""

from __future__ import annotations

import enum
from functools import lru_cache

from .errors import UnknownPrincipalError
from .model import (
    GRANTS_OF,
    NEG_ISSUERS,
    PERMISSIONS,
    R_POS,
    WEAKER_EQ,
    AuthorizationState,
    Permission,
)


class ChainMode(enum.Enum):
    """Whether chains may traverse inactive authorizations."""

    ALL = "ALL"
    ACTIVE_ONLY = "ACTIVE_ONLY"


def _require_known(state: AuthorizationState, *principals: str) -> None:
    for p in principals:
        if p not in state.principals:
            raise UnknownPrincipalError(f"unknown principal {p!r}")


@lru_cache(maxsize=16384)
def held_permissions(
    state: AuthorizationState, mode: ChainMode
) -> dict[str, frozenset[Permission]]:
    """Permission set held by every principal, as one fixpoint.

    Base: the SOA holds TT.  Step: if the grantor of an edge holds a
    permission that licenses the edge's permission, the grantee holds it.
    Closure: holding a permission implies holding all weaker ones.
    """
    held: dict[str, set[Permission]] = {p: set() for p in state.principals}
    held[state.soa] |= WEAKER_EQ[Permission.TT]
    edges = [
        a for a in state.pos if mode is ChainMode.ALL or a.active
    ]
    changed = True
    while changed:
        changed = False
        for a in edges:
            if a.grantor not in held or a.grantee not in held:
                continue  # structurally invalid edge; validate_state reports it
            if a.permission in held[a.grantee]:  # already closed over
                continue
            if any((h, a.permission) in R_POS for h in held[a.grantor]):
                held[a.grantee] |= WEAKER_EQ[a.permission]
                changed = True
    return {p: frozenset(s) for p, s in held.items()}


def holds_chain(
    state: AuthorizationState, p: str, perm: Permission, mode: ChainMode
) -> bool:
    """True iff `p` has a (mode-filtered) rooted delegation chain for `perm`."""
    _require_known(state, p)
    return perm in held_permissions(state, mode)[p]


def grantable_permissions(
    state: AuthorizationState, p: str, mode: ChainMode
) -> frozenset[Permission]:
    """All permissions `p` may issue positively, given its held set."""
    _require_known(state, p)
    out: set[Permission] = set()
    for h in held_permissions(state, mode)[p]:
        out |= GRANTS_OF[h]
    return frozenset(out)


def can_grant(
    state: AuthorizationState, p: str, perm: Permission, mode: ChainMode
) -> bool:
    """True iff `p` holds some permission licensing the issue of `perm`."""
    return perm in grantable_permissions(state, p, mode)


def can_issue_neg_auth(state: AuthorizationState, p: str, mode: ChainMode) -> bool:
    """True iff `p` holds a permission with the negative-issuing bit set."""
    _require_known(state, p)
    return bool(held_permissions(state, mode)[p] & NEG_ISSUERS)


@lru_cache(maxsize=16384)
def independence_set(
    state: AuthorizationState, avoided: str
) -> frozenset[tuple[str, Permission]]:
    """The (principal, permission) pairs independent of `avoided`.

    Base: the SOA is independent of everyone else, for every permission.
    Step: an edge with permission TT or TF, whose grantor is independent with
    a licensing permission, extends independence to the grantee.  Activity is
    ignored; edges with permission FT/FF never extend independence.
    """
    ind: set[tuple[str, Permission]] = set()
    if state.soa != avoided:
        ind |= {(state.soa, a) for a in PERMISSIONS}
    delegating = [
        a
        for a in state.pos
        if a.permission in (Permission.TT, Permission.TF)
        and a.grantor != avoided
        and a.grantee != avoided
    ]
    changed = True
    while changed:
        changed = False
        for a in delegating:
            t = (a.grantee, a.permission)
            if t in ind:
                continue
            if any(
                (a1, a.permission) in R_POS
                for (q, a1) in ind
                if q == a.grantor
            ):
                ind.add(t)
                changed = True
    return frozenset(ind)


def independent(
    state: AuthorizationState, j: str, i: str, perm: Permission
) -> bool:
    """True iff `j` reaches `perm` on a rooted chain that avoids `i`."""
    _require_known(state, j, i)
    return (j, perm) in independence_set(state, i)


def access_right(state: AuthorizationState, p: str) -> bool:
    """True iff `p` has an active rooted chain for some permission.

    The second disjunct of the defining rules (an active edge into `p` whose
    grantor can actively grant it) is subsumed by the chain fixpoint, but is
    kept explicit for fidelity.
    """
    _require_known(state, p)
    held_active = held_permissions(state, ChainMode.ACTIVE_ONLY)
    if held_active[p]:
        return True
    for a in state.pos:
        if a.grantee == p and a.active:
            if any((h, a.permission) in R_POS for h in held_active[a.grantor]):
                return True
    return False


def query_access(state: AuthorizationState) -> frozenset[str]:
    """All principals with access right."""
    return frozenset(p for p in state.principals if access_right(state, p))


def query_holders(
    state: AuthorizationState, perm: Permission, mode: ChainMode
) -> frozenset[str]:
    """All principals holding `perm` under the given chain mode."""
    held = held_permissions(state, mode)
    return frozenset(p for p in state.principals if perm in held[p])


def clear_caches() -> None:
    """Drop memoized fixpoints (used by long-running fuzz loops)."""
    held_permissions.cache_clear()
    independence_set.cache_clear()
