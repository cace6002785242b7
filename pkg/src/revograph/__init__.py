"""revograph: ownership-based delegation and revocation over authorization graphs.

The package models principals delegating a fixed right along chains rooted at
a source of authority, and the eight ways of revoking such delegations (weak
or strong dominance, local or global propagation, deletion or negative-based
resilience), plus grants.  On top of the step engine it offers permission
queries, bounded invariant verification, differential oracles and a one-step
what-if planner, with a text format, CLI and HTTP service around them.
"""

from .errors import (
    ActionError,
    ActionErrorAtStep,
    GoalError,
    GrantShadowedError,
    InvalidActionError,
    NoAuthorizationToRevokeError,
    NonTotalModelError,
    ParseError,
    ResourceBoundExceededError,
    RevographError,
    UnauthorizedGrantError,
    UnauthorizedNegativeError,
    UnknownPrincipalError,
    UnknownPrincipalInGoalError,
)
from .model import (
    Action,
    Authorization,
    AuthorizationState,
    NegativeAuthorization,
    Permission,
    Scheme,
    StructuralIssue,
    can_issue_negative,
    empty_state,
    grant_compat,
    r_pos,
    stronger,
    validate_state,
)
from .semantics import (
    ChainMode,
    access_right,
    can_grant,
    can_issue_neg_auth,
    holds_chain,
    independent,
    query_access,
    query_holders,
)
from .oracle import oracle_apply, random_reachable_state, valid_actions
from .planner import (
    Goal,
    GoalLiteral,
    PlanResult,
    cost,
    eval_goal,
    parse_goal,
    plan,
    plan_min_cost,
)
from .textio import (
    export_dot,
    parse_script,
    parse_spec,
    serialize_script,
    serialize_spec,
)
from .transition import StepDelta, apply_action, simulate, validate_action
from .verifier import (
    Invariant,
    InvariantReport,
    VerifyMode,
    check_active_connectivity,
    check_connectivity,
    verify_step_invariant,
)

__all__ = [name for name in dir() if not name.startswith("_")]
