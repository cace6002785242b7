"""Core domain model: permissions, authorizations, states, actions.

The system tracks who may access one fixed (access-type, object) pair and who
may delegate that access further.  A positive authorization carries a
permission pair (b1, b2): b1 grants the right to issue positive
authorizations, b2 the right to issue negative ones.  Negative authorizations
carry no payload; they only inactivate positive ones.

Three static relations drive everything else:

* ``r_pos``       -- which permissions a holder of a permission may grant;
* ``stronger``    -- the strict ordering of permissions by grant power;
* ``grant_compat``-- which permissions each grant action may produce.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace


class Permission(enum.Enum):
    """The (b1, b2) pair of a positive authorization."""

    TT = "TT"
    TF = "TF"
    FT = "FT"
    FF = "FF"

    @property
    def may_delegate(self) -> bool:
        """b1: the right to issue positive authorizations."""
        return self in (Permission.TT, Permission.TF)

    @property
    def may_negate(self) -> bool:
        """b2: the right to issue negative authorizations."""
        return self in (Permission.TT, Permission.FT)

    def __repr__(self):  # keeps test diffs short
        return self.value


#: Canonical ordering used everywhere output must be deterministic.
PERMISSIONS = (Permission.TT, Permission.TF, Permission.FT, Permission.FF)

_PERM_ORDER = {p: i for i, p in enumerate(PERMISSIONS)}

P = Permission  # local alias for the tables below

#: Positive rows of the grant relation: holder of the left permission may
#: issue a positive authorization carrying the right permission.
R_POS = frozenset(
    {
        (P.TT, P.TT),
        (P.TT, P.TF),
        (P.TT, P.FT),
        (P.TT, P.FF),
        (P.TF, P.TF),
        (P.TF, P.FF),
    }
)

#: Holders of these permissions may issue negative authorizations (b2 = T).
NEG_ISSUERS = frozenset({P.TT, P.FT})

#: Strict ordering: left strictly out-grants right.  TF and FT are
#: incomparable; the relation is irreflexive and transitive.
STRONGER = frozenset(
    {
        (P.TT, P.TF),
        (P.TT, P.FT),
        (P.TT, P.FF),
        (P.TF, P.FF),
        (P.FT, P.FF),
    }
)


class Scheme(enum.Enum):
    """The twelve actions: four grants and eight revocation schemes."""

    GRANT_TT = "grantTT"
    GRANT_TF = "grantTF"
    GRANT_FT = "grantFT"
    GRANT_FF = "grantFF"
    WLD = "WLD"
    WGD = "WGD"
    SLD = "SLD"
    SGD = "SGD"
    WLN = "WLN"
    WGN = "WGN"
    SLN = "SLN"
    SGN = "SGN"

    def __repr__(self):
        return self.value


SCHEMES = tuple(Scheme)

_SCHEME_ORDER = {s: i for i, s in enumerate(SCHEMES)}

GRANT_SCHEMES = frozenset(
    {Scheme.GRANT_TT, Scheme.GRANT_TF, Scheme.GRANT_FT, Scheme.GRANT_FF}
)
DELETE_SCHEMES = frozenset({Scheme.WLD, Scheme.WGD, Scheme.SLD, Scheme.SGD})
NEGATIVE_SCHEMES = frozenset({Scheme.WLN, Scheme.WGN, Scheme.SLN, Scheme.SGN})

#: Which permissions each grant scheme is allowed to produce.  A grant action
#: yields the strongest compatible permission its actor can actively grant,
#: so e.g. grantTT by a TF-holder produces a TF edge.
GRANT_COMPAT = frozenset(
    {
        (P.TT, Scheme.GRANT_TT),
        (P.TF, Scheme.GRANT_TT),
        (P.FT, Scheme.GRANT_TT),
        (P.FF, Scheme.GRANT_TT),
        (P.TF, Scheme.GRANT_TF),
        (P.FF, Scheme.GRANT_TF),
        (P.FT, Scheme.GRANT_FT),
        (P.FF, Scheme.GRANT_FF),
    }
)

#: Downward closure of the strict order, including the permission itself.
WEAKER_EQ = {
    p: frozenset({p} | {q for q in PERMISSIONS if (p, q) in STRONGER})
    for p in PERMISSIONS
}

#: Everything a holder of each single permission may positively grant.
GRANTS_OF = {
    p: frozenset({q for q in PERMISSIONS if (p, q) in R_POS}) for p in PERMISSIONS
}


def r_pos(granter_perm: Permission, granted_perm: Permission) -> bool:
    """True iff a holder of `granter_perm` may issue `granted_perm`."""
    return (granter_perm, granted_perm) in R_POS


def can_issue_negative(perm: Permission) -> bool:
    """True iff a holder of `perm` may issue negative authorizations."""
    return perm in NEG_ISSUERS


def stronger(a: Permission, b: Permission) -> bool:
    """Strictly stronger: the grant set of `a` strictly contains that of `b`."""
    return (a, b) in STRONGER


def stronger_or_equal(a: Permission, b: Permission) -> bool:
    return a is b or (a, b) in STRONGER


def grant_compat(perm: Permission, scheme: Scheme) -> bool:
    """True iff the grant `scheme` may produce an authorization with `perm`."""
    if scheme not in GRANT_SCHEMES:
        raise ValueError(f"{scheme} is not a grant scheme")
    return (perm, scheme) in GRANT_COMPAT


def perm_sort_key(p: Permission) -> int:
    return _PERM_ORDER[p]


def scheme_sort_key(s: Scheme) -> int:
    return _SCHEME_ORDER[s]


@dataclass(frozen=True)
class Authorization:
    """A positive authorization edge.

    Keyed by (grantor, grantee, permission); `active` is an attribute of the
    edge, not part of its identity.
    """

    grantor: str
    grantee: str
    permission: Permission
    active: bool = True

    @property
    def triple(self) -> tuple[str, str, Permission]:
        return (self.grantor, self.grantee, self.permission)

    def sort_key(self):
        return (self.grantor, self.grantee, perm_sort_key(self.permission))


@dataclass(frozen=True)
class NegativeAuthorization:
    """A negative authorization edge; always active, no permission payload."""

    grantor: str
    grantee: str

    @property
    def pair(self) -> tuple[str, str]:
        return (self.grantor, self.grantee)


@dataclass(frozen=True)
class Action:
    """One step of the system: a scheme applied by `actor` to `target`."""

    scheme: Scheme
    actor: str
    target: str

    def __str__(self):
        return f"do {self.scheme.value} {self.actor} {self.target}"


@dataclass(frozen=True)
class AuthorizationState:
    """One time-slice: the SOA, the principals, and both authorization sets."""

    soa: str
    principals: frozenset[str]
    pos: frozenset[Authorization] = frozenset()
    neg: frozenset[NegativeAuthorization] = frozenset()

    def pos_map(self) -> dict[tuple[str, str, Permission], bool]:
        """Triple -> active flag."""
        return {a.triple: a.active for a in self.pos}

    def neg_pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset(n.pair for n in self.neg)

    def edges_from(self, grantor: str, grantee: str) -> list[Authorization]:
        return [a for a in self.pos if a.grantor == grantor and a.grantee == grantee]

    def sorted_pos(self) -> list[Authorization]:
        return sorted(self.pos, key=Authorization.sort_key)

    def sorted_neg(self) -> list[NegativeAuthorization]:
        return sorted(self.neg, key=lambda n: n.pair)

    def with_authorizations(
        self,
        pos_map: dict[tuple[str, str, Permission], bool],
        neg_pairs,
    ) -> "AuthorizationState":
        """A new state over the same principals with replaced edge sets."""
        return replace(
            self,
            pos=frozenset(
                Authorization(g, e, p, active) for (g, e, p), active in pos_map.items()
            ),
            neg=frozenset(NegativeAuthorization(g, e) for (g, e) in neg_pairs),
        )


def empty_state(soa: str, principals) -> AuthorizationState:
    """A state with no authorizations at all."""
    return AuthorizationState(soa=soa, principals=frozenset(principals) | {soa})


@dataclass(frozen=True)
class StructuralIssue:
    """One violation of the state invariants, as reported by validate_state."""

    code: str
    detail: str

    def __str__(self):
        return f"{self.code}: {self.detail}"


def _bad_token(name: str) -> bool:
    return not name or any(ch.isspace() for ch in name)


def validate_state(state: AuthorizationState) -> list[StructuralIssue]:
    """All structural violations; the state is well formed iff the list is empty."""
    issues: list[StructuralIssue] = []
    if state.soa not in state.principals:
        issues.append(StructuralIssue("unknown-principal", f"soa {state.soa!r} not in principal set"))
    for p in sorted(state.principals):
        if _bad_token(p):
            issues.append(StructuralIssue("bad-identifier", f"principal {p!r}"))
    seen: dict[tuple[str, str, Permission], bool] = {}
    for a in state.sorted_pos():
        for end, who in (("grantor", a.grantor), ("grantee", a.grantee)):
            if who not in state.principals:
                issues.append(
                    StructuralIssue("unknown-principal", f"{end} {who!r} of {a.triple}")
                )
        if a.grantor == a.grantee:
            issues.append(StructuralIssue("self-edge", f"authorization {a.triple}"))
        if a.triple in seen:
            issues.append(StructuralIssue("duplicate-key", f"authorization {a.triple}"))
        seen[a.triple] = a.active
    for n in state.sorted_neg():
        for end, who in (("grantor", n.grantor), ("grantee", n.grantee)):
            if who not in state.principals:
                issues.append(
                    StructuralIssue("unknown-principal", f"{end} {who!r} of negative {n.pair}")
                )
        if n.grantor == n.grantee:
            issues.append(StructuralIssue("self-edge", f"negative authorization {n.pair}"))
    return issues
