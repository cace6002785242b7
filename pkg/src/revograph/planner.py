"""Goal-directed single-step planning: which actions reach a desired outcome.

A goal is a conjunction of literals over the successor state (and, for
`unchanged`, over the pre/post pair):

    access(P)      P has access right afterwards
    !access(P)     P has no access right afterwards
    holds(P,TT)    P actively holds the permission afterwards
    !holds(P,TF)   P does not actively hold it afterwards
    unchanged(P)   P's access right and actively-held permission set are
                   identical before and after

The planner enumerates every valid (scheme, target) pair for the actor,
keeps those whose successor satisfies the goal, and ranks them by a cost
that counts changed derived holdings plus access-right flips -- one unit per
change of a principal's standing, not per rewritten edge.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    ActionError,
    GoalError,
    NonTotalModelError,
    UnknownPrincipalError,
    UnknownPrincipalInGoalError,
)
from .model import (
    SCHEMES,
    Action,
    AuthorizationState,
    Permission,
    scheme_sort_key,
)
from .semantics import ChainMode, access_right, held_permissions
from .transition import apply_action, validate_action


@dataclass(frozen=True)
class GoalLiteral:
    kind: str  # "access" | "holds" | "unchanged"
    principal: str
    permission: Permission | None = None
    negated: bool = False

    def __str__(self):
        bang = "!" if self.negated else ""
        if self.kind == "holds":
            return f"{bang}holds({self.principal},{self.permission.value})"
        return f"{bang}{self.kind}({self.principal})"


@dataclass(frozen=True)
class Goal:
    literals: tuple[GoalLiteral, ...]

    def __post_init__(self):
        if not self.literals:
            raise GoalError("a goal needs at least one literal")

    def __str__(self):
        return " & ".join(str(lit) for lit in self.literals)


_LITERAL = re.compile(
    r"^(?P<neg>!?)\s*(?P<kind>access|holds|unchanged)\s*\(\s*(?P<args>[^)]*)\s*\)$"
)


def parse_goal(text: str) -> Goal:
    """Parse the goal grammar: literals joined by `&`."""
    literals: list[GoalLiteral] = []
    for chunk in text.split("&"):
        chunk = chunk.strip()
        if not chunk:
            raise GoalError(f"empty goal literal in {text!r}")
        m = _LITERAL.match(chunk)
        if not m:
            raise GoalError(f"cannot parse goal literal {chunk!r}")
        kind = m.group("kind")
        negated = bool(m.group("neg"))
        args = [a.strip() for a in m.group("args").split(",")]
        if kind == "holds":
            if len(args) != 2:
                raise GoalError(f"holds takes (principal, permission): {chunk!r}")
            try:
                perm = Permission[args[1]]
            except KeyError:
                raise GoalError(f"unknown permission {args[1]!r}") from None
            literals.append(GoalLiteral("holds", args[0], perm, negated))
        else:
            if len(args) != 1 or not args[0]:
                raise GoalError(f"{kind} takes one principal: {chunk!r}")
            if negated and kind == "unchanged":
                raise GoalError("unchanged cannot be negated")
            literals.append(GoalLiteral(kind, args[0], None, negated))
    return Goal(tuple(literals))


def eval_goal(
    pre: AuthorizationState, post: AuthorizationState, goal: Goal
) -> bool:
    """Evaluate the conjunction on the (pre, post) pair."""
    for lit in goal.literals:
        if lit.principal not in post.principals:
            raise UnknownPrincipalInGoalError(
                f"unknown principal {lit.principal!r} in goal"
            )
        if lit.kind == "access":
            value = access_right(post, lit.principal)
        elif lit.kind == "holds":
            value = (
                lit.permission
                in held_permissions(post, ChainMode.ACTIVE_ONLY)[lit.principal]
            )
        else:  # unchanged
            value = access_right(pre, lit.principal) == access_right(
                post, lit.principal
            ) and (
                held_permissions(pre, ChainMode.ACTIVE_ONLY)[lit.principal]
                == held_permissions(post, ChainMode.ACTIVE_ONLY)[lit.principal]
            )
        if value == lit.negated:
            return False
    return True


def cost(pre: AuthorizationState, post: AuthorizationState) -> int:
    """Changed (principal, actively-held permission) pairs plus access flips."""
    held_pre = held_permissions(pre, ChainMode.ACTIVE_ONLY)
    held_post = held_permissions(post, ChainMode.ACTIVE_ONLY)
    total = 0
    for p in pre.principals:
        total += len(held_pre[p] ^ held_post.get(p, frozenset()))
        if access_right(pre, p) != access_right(post, p):
            total += 1
    return total


@dataclass(frozen=True)
class PlanResult:
    action: Action
    post_state: AuthorizationState
    cost: int


def plan(
    state: AuthorizationState, actor: str, goal: Goal
) -> list[PlanResult]:
    """All single actions by `actor` whose successor satisfies `goal`.

    Sorted by ascending cost, then scheme, then target.  Candidates whose
    step has no total model cannot satisfy anything and are skipped.
    """
    if actor not in state.principals:
        raise UnknownPrincipalError(f"unknown principal {actor!r}")
    results: list[PlanResult] = []
    for scheme in SCHEMES:
        for target in sorted(state.principals - {actor}):
            action = Action(scheme, actor, target)
            try:
                validate_action(state, action)
            except (ActionError, UnknownPrincipalError):
                continue
            try:
                post, _delta = apply_action(state, action)
            except NonTotalModelError:
                continue
            if eval_goal(state, post, goal):
                results.append(PlanResult(action, post, cost(state, post)))
    results.sort(
        key=lambda r: (r.cost, scheme_sort_key(r.action.scheme), r.action.target)
    )
    return results


def plan_min_cost(
    state: AuthorizationState, actor: str, goal: Goal
) -> PlanResult | None:
    """The cheapest plan, or None when no single action reaches the goal."""
    results = plan(state, actor, goal)
    return results[0] if results else None
