"""State construction and structural validation."""

from revograph.model import (
    Authorization,
    AuthorizationState,
    NegativeAuthorization,
    Permission,
    empty_state,
    validate_state,
)

from conftest import mk_state


def test_six_principals_state_is_valid(six_principals):
    assert validate_state(six_principals) == []


def test_self_edge_reported():
    state = mk_state("A", "AB", [("A", "A", "TT")])
    issues = validate_state(state)
    assert any(i.code == "self-edge" for i in issues)


def test_unknown_grantee_reported():
    state = AuthorizationState(
        soa="A",
        principals=frozenset({"A"}),
        pos=frozenset({Authorization("A", "G", Permission.TT)}),
    )
    issues = validate_state(state)
    assert any(i.code == "unknown-principal" for i in issues)


def test_soa_must_be_a_principal():
    state = AuthorizationState(soa="Z", principals=frozenset({"A"}))
    assert any(i.code == "unknown-principal" for i in validate_state(state))


def test_duplicate_triple_with_conflicting_activity_reported():
    state = AuthorizationState(
        soa="A",
        principals=frozenset({"A", "B"}),
        pos=frozenset(
            {
                Authorization("A", "B", Permission.TT, active=True),
                Authorization("A", "B", Permission.TT, active=False),
            }
        ),
    )
    assert any(i.code == "duplicate-key" for i in validate_state(state))


def test_whitespace_identifier_reported():
    state = AuthorizationState(soa="a b", principals=frozenset({"a b"}))
    assert any(i.code == "bad-identifier" for i in validate_state(state))


def test_negative_self_edge_reported():
    state = AuthorizationState(
        soa="A",
        principals=frozenset({"A", "B"}),
        neg=frozenset({NegativeAuthorization("B", "B")}),
    )
    assert any(i.code == "self-edge" for i in validate_state(state))


def test_empty_state_has_only_soa_edges():
    state = empty_state("A", ["A", "B"])
    assert validate_state(state) == []
    assert state.pos == frozenset() and state.neg == frozenset()


def test_states_are_value_equal_and_hashable(six_principals):
    twin = mk_state(
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
    assert six_principals == twin
    assert len({six_principals, twin}) == 1
