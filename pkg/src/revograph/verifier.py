"""Invariant definitions and bounded step-preservation checking.

Two invariants matter: every authorization's grantor must hold a permission
licensing it (connectivity), and every *active* authorization's grantor must
actively hold one (active-connectivity).  The checker asserts that applying
any valid action to a state satisfying the invariant yields a state that
still satisfies it, over three search regimes:

* EXHAUSTIVE -- every state reachable from an empty root within a depth
  bound, deduplicated, stepping through the real engine;
* RANDOM -- seeded random reachable states;
* RANDOM_ARBITRARY -- seeded random *arbitrary* well-formed states filtered
  by the pre-invariant, closer to the original unconstrained claim.

Steps on which the engine has no total model are tallied separately in the
report; they are not invariant counterexamples, and every counterexample
witness replays independently.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field

from .errors import NonTotalModelError, ResourceBoundExceededError
from .model import (
    GRANTS_OF,
    NEG_ISSUERS,
    PERMISSIONS,
    Action,
    Authorization,
    AuthorizationState,
    NegativeAuthorization,
    Permission,
    empty_state,
    validate_state,
)
from .oracle import principal_names, random_reachable_state, valid_actions
from .semantics import ChainMode, grantable_permissions, held_permissions
from .transition import apply_action


class Invariant(enum.Enum):
    CONNECTIVITY = "connectivity"
    ACTIVE_CONNECTIVITY = "active-connectivity"


class VerifyMode(enum.Enum):
    EXHAUSTIVE = "EXHAUSTIVE"
    RANDOM = "RANDOM"
    RANDOM_ARBITRARY = "RANDOM_ARBITRARY"


@dataclass(frozen=True)
class Violation:
    """One authorization lacking the required supporting chain."""

    kind: str  # "pos" | "neg"
    grantor: str
    grantee: str
    permission: Permission | None

    def __str__(self):
        if self.kind == "pos":
            return f"({self.grantor}, {self.grantee}, {self.permission.value}) unsupported"
        return f"negative ({self.grantor}, {self.grantee}) unsupported"


def check_connectivity(
    state: AuthorizationState, include_negatives: bool = True
) -> list[Violation]:
    """Violations of the connectivity property (all-mode chains).

    With `include_negatives`, negative authorizations are also required to
    have a capable issuer.  Note that only the positive half is preserved by
    steps: negative edges persist unconditionally while a later deletion can
    strip their issuer's capability, so the extended property can be broken
    by perfectly valid histories.
    """
    return _check(
        state, ChainMode.ALL, active_only_edges=False, negatives=include_negatives
    )


def check_active_connectivity(
    state: AuthorizationState, include_negatives: bool = True
) -> list[Violation]:
    """Violations over active authorizations with active-mode chains.

    Negative authorizations count as always active; the same caveat as for
    check_connectivity applies to them.
    """
    return _check(
        state, ChainMode.ACTIVE_ONLY, active_only_edges=True, negatives=include_negatives
    )


def _check(
    state: AuthorizationState,
    mode: ChainMode,
    active_only_edges: bool,
    negatives: bool,
) -> list[Violation]:
    held = held_permissions(state, mode)
    out: list[Violation] = []
    for a in state.sorted_pos():
        if active_only_edges and not a.active:
            continue
        if a.permission not in grantable_from(held[a.grantor]):
            out.append(Violation("pos", a.grantor, a.grantee, a.permission))
    if negatives:
        for neg in state.sorted_neg():
            if not held[neg.grantor] & NEG_ISSUERS:
                out.append(Violation("neg", neg.grantor, neg.grantee, None))
    return out


def grantable_from(held: frozenset[Permission]) -> set[Permission]:
    out: set[Permission] = set()
    for h in held:
        out |= GRANTS_OF[h]
    return out


@dataclass(frozen=True)
class Witness:
    """A replayable counterexample: pre-state, action, and the violations."""

    state: AuthorizationState
    action: Action
    violations: tuple[Violation, ...]


@dataclass
class InvariantReport:
    invariant: str
    mode: str
    params: dict
    result: str  # "HOLDS" | "COUNTEREXAMPLE"
    witness: Witness | None = None
    states_checked: int = 0
    steps_checked: int = 0
    undefined_steps: list[tuple[AuthorizationState, Action]] = field(
        default_factory=list
    )


_CHECKS = {
    Invariant.CONNECTIVITY: check_connectivity,
    Invariant.ACTIVE_CONNECTIVITY: check_active_connectivity,
}


def verify_step_invariant(
    invariant: Invariant | str,
    n: int,
    mode: VerifyMode | str,
    *,
    depth: int | None = None,
    samples: int | None = None,
    seed: int = 0,
    root: AuthorizationState | None = None,
    sample_depth: int | None = None,
    actions_per_state: int | None = None,
    include_negatives: bool = False,
    state_cap: int = 10**6,
) -> InvariantReport:
    """Check that every valid step out of the explored states preserves
    the invariant; HOLDS or the first replayable COUNTEREXAMPLE.

    By default the invariant ranges over positive authorizations, which is
    what steps actually preserve; `include_negatives` switches to the strict
    reading, under which orphaned negative edges are findable.

    `actions_per_state` limits each state to a seeded sample of its valid
    actions (None checks all of them).  EXHAUSTIVE explores to `depth` from
    `root` (default: the empty state over `n` principals); RANDOM draws
    `samples` reachable states of trace length `sample_depth` (default 2n);
    RANDOM_ARBITRARY draws `samples` arbitrary well-formed states satisfying
    the pre-invariant.
    """
    invariant = Invariant(invariant) if isinstance(invariant, str) else invariant
    mode = VerifyMode(mode) if isinstance(mode, str) else mode
    if n < 1:
        raise ValueError("need n >= 1")
    base_check = _CHECKS[invariant]

    def check(state):
        return base_check(state, include_negatives=include_negatives)

    report = InvariantReport(
        invariant=invariant.value,
        mode=mode.value,
        params={
            "n": n,
            "depth": depth,
            "samples": samples,
            "seed": seed,
            "state_cap": state_cap,
            "actions_per_state": actions_per_state,
            "include_negatives": include_negatives,
        },
        result="HOLDS",
    )
    rng = random.Random(seed)

    def states():
        if mode is VerifyMode.EXHAUSTIVE:
            yield from _reachable_states(
                root or empty_state_for(n), depth or 0, state_cap, report
            )
        elif mode is VerifyMode.RANDOM:
            d = sample_depth if sample_depth is not None else 2 * n
            for k in range(samples or 0):
                st, _trace = random_reachable_state(seed * 1_000_003 + k, n, d)
                yield st
        else:
            produced = 0
            while produced < (samples or 0):
                st = _arbitrary_state(rng, n)
                if not validate_state(st) and not check(st):
                    produced += 1
                    yield st

    for state in states():
        report.states_checked += 1
        actions = valid_actions(state)
        if actions_per_state is not None and len(actions) > actions_per_state:
            actions = rng.sample(actions, actions_per_state)
        for action in actions:
            try:
                post, _delta = apply_action(state, action)
            except NonTotalModelError:
                report.undefined_steps.append((state, action))
                continue
            report.steps_checked += 1
            violations = check(post)
            if violations:
                report.result = "COUNTEREXAMPLE"
                report.witness = Witness(state, action, tuple(violations))
                return report
    return report


def empty_state_for(n: int) -> AuthorizationState:
    names = principal_names(n)
    return empty_state(names[0], names)


def _reachable_states(root, depth, state_cap, report):
    """Breadth-first reachable states through the engine, deduplicated."""
    seen = {root}
    frontier = [root]
    yield root
    for _ in range(depth):
        nxt = []
        for state in frontier:
            for action in valid_actions(state):
                try:
                    post, _ = apply_action(state, action)
                except NonTotalModelError:
                    # recorded when the owning state is checked
                    continue
                if post not in seen:
                    seen.add(post)
                    if len(seen) > state_cap:
                        raise ResourceBoundExceededError(
                            f"more than {state_cap} reachable states"
                        )
                    nxt.append(post)
                    yield post
        frontier = nxt


def _arbitrary_state(rng: random.Random, n: int) -> AuthorizationState:
    """A random structurally-valid state; no reachability assumed."""
    names = principal_names(n)
    pos: set[Authorization] = set()
    neg: set[NegativeAuthorization] = set()
    n_edges = rng.randint(0, 2 * n)
    for _ in range(n_edges):
        g, e = rng.sample(names, 2)
        perm = rng.choice(PERMISSIONS)
        active = rng.random() < 0.8
        if not any(a.triple == (g, e, perm) for a in pos):
            pos.add(Authorization(g, e, perm, active))
    for _ in range(rng.randint(0, n // 2)):
        g, e = rng.sample(names, 2)
        neg.add(NegativeAuthorization(g, e))
    return AuthorizationState(
        soa=names[0], principals=frozenset(names), pos=frozenset(pos), neg=frozenset(neg)
    )
