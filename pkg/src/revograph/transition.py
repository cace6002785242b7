"""Step semantics: one action turns a state into its unique successor.

The successor is defined by a rule set over two time points.  The rules for
deletion, addition and inactivation refer to the *successor's* own chains
(negatively and positively), so the step is evaluated under well-founded
semantics via an alternating fixpoint: an underestimate and an overestimate
are refined against each other until they meet.  When they do not meet, the
residue is resolved by a bounded search for two-valued fixpoints of the rule
operator (the models of the rule set); the unique smallest one is the
successor.  Zero models, or ambiguity at minimal size, fail the step with
``NonTotalModelError`` rather than guessing.

Rule content, per scheme family (actor i, target j):

* delete schemes remove every (i, j, *) edge; strong ones also remove edges
  into j (and, globally, into every downstream loser) from grantors that are
  not suitably independent of i;
* any pre-state edge whose grantor can no longer grant it -- counting
  inactive chains, which still prevent deletion -- is deleted; losing only
  the *active* grant capability inactivates instead;
* local schemes re-issue, from i, every (z, k, a) whose grantor z actively
  granted a before the step but cannot after it (k == i is skipped: a
  self-authorization is structurally forbidden);
* an edge deleted purely through entitlement loss is replaced by the
  strongest weaker permission its grantor can still grant (the active
  analogue applies under negative schemes);
* negative schemes add the (i, j) negative edge and inactivate rather than
  delete; inactive edges stay inactive as long as they exist.

Internally the evaluation runs over an integer arena: permissions are 2-bit
indices, permission sets are 4-bit masks, edges are small integers.  The
public surface speaks the domain types.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import (
    ActionError,
    ActionErrorAtStep,
    GrantShadowedError,
    InvalidActionError,
    NoAuthorizationToRevokeError,
    NonTotalModelError,
    UnauthorizedGrantError,
    UnauthorizedNegativeError,
    UnknownPrincipalError,
)
from .model import (
    DELETE_SCHEMES,
    GRANT_COMPAT,
    GRANT_SCHEMES,
    NEG_ISSUERS,
    NEGATIVE_SCHEMES,
    PERMISSIONS,
    STRONGER,
    Action,
    AuthorizationState,
    Permission,
    Scheme,
)
from .semantics import (
    ChainMode,
    grantable_permissions,
    held_permissions,
    independence_set,
)

Triple = tuple[str, str, Permission]
Pair = tuple[str, str]

# ---------------------------------------------------------------------------
# integer encoding: permission index 0..3, permission-set = 4-bit mask

_PIDX = {p: k for k, p in enumerate(PERMISSIONS)}

#: grantable-set mask per held permission (TT, TF, FT, FF)
_GRANTS_OF = (0b1111, 0b1010, 0b0000, 0b0000)
#: downward closure mask (the permission itself plus all strictly weaker)
_WEAKER_EQ = (0b1111, 0b1010, 0b1100, 0b1000)
#: strictly-weaker mask
_WEAKER = (0b1110, 0b1000, 0b1000, 0b0000)
#: permissions licensing negative authorizations (TT, FT)
_NEG_ISSUERS = 0b0101
#: a2 strictly between a and a1: only TT..FF has TF and FT in between
_BETWEEN = tuple(
    tuple(
        sum(
            1 << a2
            for a2 in range(4)
            if (_WEAKER[a] >> a2 & 1) and (_WEAKER[a2] >> a1 & 1)
        )
        for a1 in range(4)
    )
    for a in range(4)
)
#: grantable-set mask for a 4-bit held mask
_GRANTS_BY_HELD = tuple(
    _GRANTS_OF[0] * (m >> 0 & 1)
    | _GRANTS_OF[1] * (m >> 1 & 1)
    | _GRANTS_OF[2] * (m >> 2 & 1)
    | _GRANTS_OF[3] * (m >> 3 & 1)
    for m in range(16)
)
_COMPAT_MASK = {
    Scheme.GRANT_TT: 0b1111,
    Scheme.GRANT_TF: 0b1010,
    Scheme.GRANT_FT: 0b0100,
    Scheme.GRANT_FF: 0b1000,
}


def _mask_of(perms: Iterable[Permission]) -> int:
    m = 0
    for p in perms:
        m |= 1 << _PIDX[p]
    return m


@dataclass(frozen=True)
class StepDelta:
    """The change set of one step, in terms of derived atoms.

    `deleted`/`added` record every delete/new derivation (a triple may appear
    in both); `inactivated` lists surviving triples that were active before
    and inactive after; `neg_added` lists genuinely new negative edges.
    """

    deleted: frozenset[Triple] = frozenset()
    added: frozenset[Triple] = frozenset()
    inactivated: frozenset[Triple] = frozenset()
    neg_added: frozenset[Pair] = frozenset()


class _Interp(NamedTuple):
    """One (under- or over-) estimate of the successor's atom sets.

    `cg`/`cag` are per-principal grantable-set masks; the other components
    are sets of encoded edges.
    """

    delete: frozenset
    new: frozenset
    pos: frozenset
    inact: frozenset
    cg: tuple
    cag: tuple

    @classmethod
    def empty(cls, n: int):
        z = frozenset()
        return cls(z, z, z, z, (0,) * n, (0,) * n)


class _StepContext:
    """Facts about the pre-state and the action, fixed during evaluation."""

    def __init__(self, state: AuthorizationState, action: Action):
        self.state = state
        self.action = action
        self.scheme = action.scheme
        self.names = sorted(state.principals)
        self.n = len(self.names)
        idx = {p: k for k, p in enumerate(self.names)}
        self.soa = idx[state.soa]
        self.actor = idx[action.actor]
        self.target = idx[action.target]

        def encode(g: str, e: str, p: Permission) -> int:
            return (idx[g] * self.n + idx[e]) * 4 + _PIDX[p]

        self.encode = encode
        self.pos0: list[tuple[int, int, int, int]] = []  # (tid, g, e, p)
        self.inact0: set[int] = set()
        for a in state.pos:
            tid = encode(a.grantor, a.grantee, a.permission)
            self.pos0.append((tid, idx[a.grantor], idx[a.grantee], _PIDX[a.permission]))
        self.pos0.sort()
        self.pos0_ids = frozenset(t[0] for t in self.pos0)
        for a in state.pos:
            if not a.active:
                self.inact0.add(encode(a.grantor, a.grantee, a.permission))

        self.cag0 = [0] * self.n
        for p in state.principals:
            self.cag0[idx[p]] = _mask_of(
                grantable_permissions(state, p, ChainMode.ACTIVE_ONLY)
            )
        if self.scheme in (Scheme.SLD, Scheme.SGD, Scheme.SLN, Scheme.SGN):
            ind = independence_set(state, action.actor)
            finals = [0] * self.n
            for (q, a1) in ind:
                finals[idx[q]] |= 1 << _PIDX[a1]
            self.ind_lic = [_GRANTS_BY_HELD[m] for m in finals]
        else:
            self.ind_lic = [0] * self.n

    def decode_triple(self, tid: int) -> Triple:
        p = PERMISSIONS[tid & 3]
        ge = tid >> 2
        return (self.names[ge // self.n], self.names[ge % self.n], p)


def validate_action(state: AuthorizationState, action: Action) -> None:
    """Raise an ActionError unless `action` is applicable in `state`."""
    for p in (action.actor, action.target):
        if p not in state.principals:
            raise UnknownPrincipalError(f"unknown principal {p!r}")
    if action.actor == action.target:
        raise InvalidActionError("actor and target must differ")
    scheme = action.scheme
    if scheme in GRANT_SCHEMES:
        grantable = grantable_permissions(state, action.actor, ChainMode.ACTIVE_ONLY)
        best = _best_grant_perm(grantable, scheme)
        if best is None:
            raise UnauthorizedGrantError(
                f"{action.actor} cannot actively grant anything compatible with {scheme.value}"
            )
        existing = state.pos_map().get((action.actor, action.target, best))
        if existing is False:
            raise GrantShadowedError(
                f"({action.actor}, {action.target}, {best.value}) exists inactive; "
                "there is no reactivation action"
            )
    elif scheme in DELETE_SCHEMES:
        if not any(
            a.grantor == action.actor and a.grantee == action.target for a in state.pos
        ):
            raise NoAuthorizationToRevokeError(
                f"no positive authorization {action.actor} -> {action.target}"
            )
    else:
        held = held_permissions(state, ChainMode.ACTIVE_ONLY)[action.actor]
        if not held & NEG_ISSUERS:
            raise UnauthorizedNegativeError(
                f"{action.actor} cannot actively issue negative authorizations"
            )


def _best_grant_perm(grantable, scheme: Scheme) -> Permission | None:
    candidates = {a for a in grantable if (a, scheme) in GRANT_COMPAT}
    best = [a for a in candidates if not any((b, a) in STRONGER for b in candidates)]
    if not best:
        return None
    assert len(best) == 1, best  # grant capability sets are totally ordered
    return best[0]


def _best_grant_bit(cag_mask: int, scheme: Scheme) -> int | None:
    candidates = _COMPAT_MASK[scheme] & cag_mask
    if not candidates:
        return None
    for bit in range(4):  # capability nesting makes the first set bit maximal
        if candidates >> bit & 1:
            return bit
    return None


def _grant_masks(ctx: _StepContext, pos: frozenset, skip: frozenset) -> tuple:
    """Per-principal grantable-set masks derived from a candidate edge set."""
    n = ctx.n
    held = [0] * n
    held[ctx.soa] = _WEAKER_EQ[0]
    edges = [
        ((tid >> 2) // n, (tid >> 2) % n, tid & 3) for tid in pos if tid not in skip
    ]
    changed = True
    while changed:
        changed = False
        for (g, e, p) in edges:
            if held[e] >> p & 1:
                continue
            if _GRANTS_BY_HELD[held[g]] >> p & 1:
                held[e] |= _WEAKER_EQ[p]
                changed = True
    return tuple(_GRANTS_BY_HELD[m] for m in held)


def _gamma(ctx: _StepContext, assume: _Interp) -> _Interp:
    """Least model of the step rules with negations evaluated against `assume`."""
    s = ctx.scheme
    i, j = ctx.actor, ctx.target
    pos0 = ctx.pos0
    n = ctx.n
    delete: set[int] = set()
    new: set[int] = set()
    inact: set[int] = set()

    grant_bit = None
    if s in GRANT_SCHEMES:
        grant_bit = _best_grant_bit(ctx.cag0[i], s)
        if grant_bit is not None:
            new.add((i * n + j) * 4 + grant_bit)
    if s in DELETE_SCHEMES:
        delete |= {tid for (tid, g, e, _p) in pos0 if g == i and e == j}
    if s is Scheme.SLD:
        delete |= {
            tid for (tid, g, e, p) in pos0 if e == j and not ctx.ind_lic[g] >> p & 1
        }
    if s in (Scheme.SLN, Scheme.SGN):
        inact |= {
            tid for (tid, g, e, p) in pos0 if e == j and not ctx.ind_lic[g] >> p & 1
        }

    forwarding = s in (Scheme.WLD, Scheme.SLD, Scheme.WLN, Scheme.SLN)
    negative = s in NEGATIVE_SCHEMES
    a_cg, a_cag = assume.cg, assume.cag
    a_delete, a_inact = assume.delete, assume.inact

    while True:
        before = (len(delete), len(new), len(inact))

        # entitlement-loss deletion: inactive chains still prevent deletion
        delete |= {tid for (tid, g, e, p) in pos0 if not a_cg[g] >> p & 1}
        if s is Scheme.SGD:
            hit = {(tid >> 2) % n for tid in delete}
            delete |= {
                tid
                for (tid, g, e, p) in pos0
                if e in hit and not ctx.ind_lic[g] >> p & 1
            }

        pos = frozenset({tid for tid in ctx.pos0_ids if tid not in a_delete} | new)
        cg = _grant_masks(ctx, pos, frozenset())
        cag = _grant_masks(ctx, pos, a_inact)

        if forwarding:
            new |= {
                (i * n + k) * 4 + a
                for (tid, z, k, a) in pos0
                if k != i and ctx.cag0[z] >> a & 1 and not a_cag[z] >> a & 1
            }
        # downgrade replacement, all-mode flavour
        for (tid, g, e, a) in pos0:
            if a_cg[g] >> a & 1:
                continue
            options = _WEAKER[a] & cg[g]
            for a1 in range(4):
                if options >> a1 & 1 and not _BETWEEN[a][a1] & a_cg[g]:
                    new.add((g * n + e) * 4 + a1)
        # the active-mode flavour, under negative schemes only; the action
        # pair is skipped (the revocation would re-inactivate it immediately)
        if negative:
            for (tid, g, e, a) in pos0:
                if g == i and e == j:
                    continue
                if a_cag[g] >> a & 1:
                    continue
                options = _WEAKER[a] & cag[g]
                for a1 in range(4):
                    if options >> a1 & 1 and not _BETWEEN[a][a1] & a_cag[g]:
                        new.add((g * n + e) * 4 + a1)

        pos = frozenset({tid for tid in ctx.pos0_ids if tid not in a_delete} | new)

        if negative:
            base = (i * n + j) * 4
            inact |= {tid for tid in pos if tid & ~3 == base}
        inact |= {tid for tid in pos if not a_cag[(tid >> 2) // n] >> (tid & 3) & 1}
        if s is Scheme.SGN:
            fresh = {(tid >> 2) % n for tid in inact if tid not in ctx.inact0}
            inact |= {
                tid
                for (tid, g, e, p) in pos0
                if e in fresh and not ctx.ind_lic[g] >> p & 1
            }
        inact |= {tid for tid in ctx.inact0 if tid in pos}

        if (len(delete), len(new), len(inact)) == before:
            break

    pos = frozenset({tid for tid in ctx.pos0_ids if tid not in a_delete} | new)
    return _Interp(
        delete=frozenset(delete),
        new=frozenset(new),
        pos=pos,
        inact=frozenset(inact),
        cg=_grant_masks(ctx, pos, frozenset()),
        cag=_grant_masks(ctx, pos, a_inact),
    )


def _well_founded_step(ctx: _StepContext) -> _Interp:
    under = _Interp.empty(ctx.n)
    for _ in range(4 * (len(ctx.pos0) + ctx.n**2) + 8):
        over = _gamma(ctx, under)
        next_under = _gamma(ctx, over)
        if next_under == under:
            break
        under = next_under
    else:  # pragma: no cover - the alternation provably converges
        raise AssertionError("alternating fixpoint failed to converge")
    if under == over:
        return under
    return _complete_partial_model(ctx, under, over)


def _complete_partial_model(
    ctx: _StepContext, under: _Interp, over: _Interp
) -> _Interp:
    """Resolve a partial well-founded model by bounded model search.

    A two-valued interpretation is a model of the step rules exactly when it
    is a fixpoint of the rule operator.  The alternation brackets every model
    between `under` and `over`, so we enumerate assignments to the undefined
    delete/new/inact atoms (everything else is derived) in order of size and
    accept a unique smallest fixpoint: the least-change reading, under which
    effects need a cause.  Zero fixpoints means the rules genuinely admit no
    successor state; distinct minimal fixpoints mean the successor is
    ambiguous.  Both are reported as non-total, never guessed.
    """
    choice_atoms: list[tuple[str, int]] = []
    for name in ("delete", "new", "inact"):
        for atom in sorted(getattr(over, name) - getattr(under, name)):
            if name == "inact" and atom in ctx.inact0:
                continue  # persistence rederivation, forced by delete/new
            choice_atoms.append((name, atom))
    undefined = [
        (name, repr(ctx.decode_triple(atom))) for name, atom in choice_atoms
    ]
    if len(choice_atoms) > 20:
        raise NonTotalModelError(
            undefined, "undefined residue too large for model search"
        )

    def candidate_for(chosen) -> _Interp:
        extra: dict[str, set] = {"delete": set(), "new": set(), "inact": set()}
        for name, atom in chosen:
            extra[name].add(atom)
        delete = under.delete | extra["delete"]
        new = under.new | extra["new"]
        pos = frozenset({t for t in ctx.pos0_ids if t not in delete} | new)
        # a surviving edge that was inactive before stays inactive
        inact = under.inact | extra["inact"] | {t for t in ctx.inact0 if t in pos}
        return _Interp(
            delete=frozenset(delete),
            new=frozenset(new),
            pos=pos,
            inact=frozenset(inact),
            cg=_grant_masks(ctx, pos, frozenset()),
            cag=_grant_masks(ctx, pos, frozenset(inact)),
        )

    for size in range(len(choice_atoms) + 1):
        found: list[_Interp] = []
        for chosen in combinations(choice_atoms, size):
            candidate = candidate_for(chosen)
            if _gamma(ctx, candidate) == candidate and candidate not in found:
                found.append(candidate)
        if len(found) == 1:
            return found[0]
        if len(found) > 1:
            raise NonTotalModelError(
                undefined,
                "multiple minimal total models exist for this state and action",
            )
    raise NonTotalModelError(
        undefined, "no total model exists for this state and action"
    )


def apply_action(
    state: AuthorizationState, action: Action
) -> tuple[AuthorizationState, StepDelta]:
    """The unique successor of `state` under `action`, plus its change set."""
    validate_action(state, action)
    ctx = _StepContext(state, action)
    model = _well_founded_step(ctx)

    pos_map = {
        ctx.decode_triple(tid): tid not in model.inact for tid in model.pos
    }
    neg_pairs = set(state.neg_pairs())
    neg_added: frozenset[Pair] = frozenset()
    if action.scheme in NEGATIVE_SCHEMES:
        pair = (action.actor, action.target)
        if pair not in neg_pairs:
            neg_added = frozenset({pair})
        neg_pairs.add(pair)
    post = state.with_authorizations(pos_map, neg_pairs)
    delta = StepDelta(
        deleted=frozenset(ctx.decode_triple(t) for t in model.delete),
        added=frozenset(ctx.decode_triple(t) for t in model.new),
        inactivated=frozenset(
            ctx.decode_triple(t)
            for t in model.pos
            if t in model.inact and t not in ctx.inact0
        ),
        neg_added=neg_added,
    )
    return post, delta


def simulate(
    state: AuthorizationState, actions: Iterable[Action]
) -> tuple[AuthorizationState, list[StepDelta]]:
    """Left fold of apply_action; fails fast with the index of a bad action."""
    deltas: list[StepDelta] = []
    current = state
    for k, action in enumerate(actions):
        try:
            current, delta = apply_action(current, action)
        except (ActionError, UnknownPrincipalError, NonTotalModelError) as exc:
            raise ActionErrorAtStep(k, exc) from exc
        deltas.append(delta)
    return current, deltas
