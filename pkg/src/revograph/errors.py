"""Exception hierarchy.

Every domain error carries a stable ``code`` string so that callers (CLI exit
paths, the HTTP service, replay tooling) can dispatch on it without parsing
messages.
"""

from __future__ import annotations


class RevographError(Exception):
    """Base class for all domain errors."""

    code = "error"


class UnknownPrincipalError(RevographError):
    code = "unknown-principal"


class ActionError(RevographError):
    """An action was rejected by validation; the state is untouched."""

    code = "action-error"


class InvalidActionError(ActionError):
    code = "invalid-action"


class UnauthorizedGrantError(ActionError):
    code = "unauthorized-grant"


class GrantShadowedError(ActionError):
    """A grant would recreate a triple that already exists in inactive form.

    There is no reactivation action in the framework, so accepting the grant
    would be ambiguous between "reactivate" and "duplicate"; we reject it.
    """

    code = "grant-shadowed"


class NoAuthorizationToRevokeError(ActionError):
    code = "no-authorization-to-revoke"


class UnauthorizedNegativeError(ActionError):
    code = "unauthorized-negative"


class NonTotalModelError(RevographError):
    """The well-founded evaluation of a step left atoms undefined.

    This signals that the rule set has no consistent successor state for the
    given (state, action) pair.  It is never swallowed: callers either report
    it or record the pair for analysis.
    """

    code = "non-total-model"

    def __init__(self, undefined, message=None):
        self.undefined = tuple(sorted(undefined))
        super().__init__(
            message
            or "well-founded model is not total; %d atoms undefined (e.g. %s)"
            % (len(self.undefined), self.undefined[:3])
        )


class ActionErrorAtStep(RevographError):
    """Wraps the failure of one action inside a multi-step simulation."""

    code = "action-error-at-step"

    def __init__(self, step, cause):
        self.step = step
        self.cause = cause
        super().__init__(f"action at step {step} failed: {cause}")


class ParseError(RevographError):
    code = "syntax-error"

    def __init__(self, message, line=None, code=None):
        self.line = line
        if code is not None:
            self.code = code
        where = f" (line {line})" if line is not None else ""
        super().__init__(message + where)


class GoalError(RevographError):
    code = "bad-goal"


class UnknownPrincipalInGoalError(GoalError):
    code = "unknown-principal-in-goal"


class ResourceBoundExceededError(RevographError):
    code = "resource-bound-exceeded"
