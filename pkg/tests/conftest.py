"""Shared fixtures: the worked example states used across the suites."""

from __future__ import annotations

import pytest

from revograph.model import (
    Authorization,
    AuthorizationState,
    NegativeAuthorization,
    Permission,
)


def mk_state(soa, principals, auths, negs=(), inactive=()):
    """Compact state builder: auths as (grantor, grantee, 'TT') triples."""
    inactive = {tuple(t) for t in inactive}
    return AuthorizationState(
        soa=soa,
        principals=frozenset(principals),
        pos=frozenset(
            Authorization(g, e, Permission[p], active=(g, e, p) not in inactive)
            for (g, e, p) in auths
        ),
        neg=frozenset(NegativeAuthorization(g, e) for (g, e) in negs),
    )


def state_key(state):
    """Canonical comparable rendering of a state's authorization content."""
    return (
        tuple(
            sorted(
                (a.grantor, a.grantee, a.permission.value, a.active)
                for a in state.pos
            )
        ),
        tuple(sorted(n.pair for n in state.neg)),
    )


def edge_set(state):
    return {
        (a.grantor, a.grantee, a.permission.value, a.active) for a in state.pos
    }


@pytest.fixture
def intro_state():
    """Three-edge introduction example: A grants B, B grants C and D."""
    return mk_state(
        "A", "ABCDE", [("A", "B", "TT"), ("B", "C", "TF"), ("B", "D", "TT")]
    )


@pytest.fixture
def six_principals():
    """The seven-edge example every revocation scheme is illustrated on."""
    return mk_state(
        "A",
        "ABCDEF",
        [
            ("A", "B", "TT"),
            ("A", "D", "TT"),
            ("B", "C", "TF"),
            ("B", "E", "TT"),
            ("D", "B", "FF"),
            ("D", "E", "TT"),
            ("E", "F", "FF"),
        ],
    )


WLD_OUTCOME = {
    ("A", "C", "TF", True),
    ("A", "D", "TT", True),
    ("A", "E", "TT", True),
    ("D", "B", "FF", True),
    ("D", "E", "TT", True),
    ("E", "F", "FF", True),
}

WGD_OUTCOME = {
    ("A", "D", "TT", True),
    ("D", "B", "FF", True),
    ("D", "E", "TT", True),
    ("E", "F", "FF", True),
}

SLD_OUTCOME = {
    ("A", "C", "TF", True),
    ("A", "D", "TT", True),
    ("A", "E", "TT", True),
    ("D", "E", "TT", True),
    ("E", "F", "FF", True),
}

SGD_OUTCOME = {("A", "D", "TT", True)}

WLN_OUTCOME = {
    ("A", "B", "TT", False),
    ("A", "C", "TF", True),
    ("A", "D", "TT", True),
    ("A", "E", "TT", True),
    ("B", "C", "TF", False),
    ("B", "E", "TT", False),
    ("D", "B", "FF", True),
    ("D", "E", "TT", True),
    ("E", "F", "FF", True),
}


@pytest.fixture
def post_sgd():
    return mk_state("A", "ABCDEF", [("A", "D", "TT")])


@pytest.fixture
def post_wln():
    return mk_state(
        "A",
        "ABCDEF",
        [
            ("A", "B", "TT"),
            ("A", "C", "TF"),
            ("A", "D", "TT"),
            ("A", "E", "TT"),
            ("B", "C", "TF"),
            ("B", "E", "TT"),
            ("D", "B", "FF"),
            ("D", "E", "TT"),
            ("E", "F", "FF"),
        ],
        negs=[("A", "B")],
        inactive=[("A", "B", "TT"), ("B", "C", "TF"), ("B", "E", "TT")],
    )
