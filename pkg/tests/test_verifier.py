"""Connectivity checks and bounded step-preservation verification."""

import pytest

from revograph.errors import ResourceBoundExceededError
from revograph.model import Action, Scheme, empty_state
from revograph.transition import apply_action
from revograph.verifier import (
    Invariant,
    VerifyMode,
    check_active_connectivity,
    check_connectivity,
    verify_step_invariant,
)

from conftest import mk_state


def test_six_principals_connectivity_ok(six_principals):
    assert check_connectivity(six_principals) == []
    assert check_active_connectivity(six_principals) == []


def test_post_wln_active_connectivity_ok(post_wln):
    assert check_active_connectivity(post_wln) == []
    assert check_connectivity(post_wln) == []


def test_unsupported_edge_reported():
    state = mk_state("A", "ABC", [("B", "C", "TF")])
    violations = check_connectivity(state)
    assert [(v.grantor, v.grantee, v.permission.value) for v in violations] == [
        ("B", "C", "TF")
    ]


def test_empty_state_vacuously_connected():
    assert check_connectivity(mk_state("A", "AB", [])) == []


def test_active_connectivity_sees_inactive_support_gap():
    state = mk_state(
        "A",
        "ABC",
        [("A", "B", "TT"), ("B", "C", "TF")],
        inactive=[("A", "B", "TT")],
    )
    assert check_connectivity(state) == []
    violations = check_active_connectivity(state)
    assert [(v.grantor, v.grantee) for v in violations] == [("B", "C")]


def test_orphaned_negative_is_detectable_but_optional(six_principals):
    # B issues a negative, then loses its own capability through a deletion
    step1, _ = apply_action(six_principals, Action(Scheme.WLN, "B", "C"))
    step2, _ = apply_action(step1, Action(Scheme.SGD, "A", "B"))
    assert ("B", "C") in {n.pair for n in step2.neg}
    strict = check_connectivity(step2)
    assert any(v.kind == "neg" and v.grantor == "B" for v in strict)
    assert check_connectivity(step2, include_negatives=False) == []


def test_exhaustive_small_holds():
    for inv in Invariant:
        report = verify_step_invariant(inv, 2, VerifyMode.EXHAUSTIVE, depth=2)
        assert report.result == "HOLDS"
        assert report.states_checked > 1
        assert report.steps_checked > 0


def test_exhaustive_lone_soa_trivial():
    report = verify_step_invariant(
        Invariant.CONNECTIVITY, 1, VerifyMode.EXHAUSTIVE, depth=5
    )
    assert report.result == "HOLDS"
    assert report.states_checked == 1
    assert report.steps_checked == 0


def test_random_mode_holds():
    report = verify_step_invariant(
        Invariant.ACTIVE_CONNECTIVITY,
        4,
        VerifyMode.RANDOM,
        samples=40,
        seed=11,
        actions_per_state=3,
    )
    assert report.result == "HOLDS"
    assert report.states_checked == 40


def test_random_arbitrary_mode_runs():
    report = verify_step_invariant(
        Invariant.CONNECTIVITY,
        3,
        VerifyMode.RANDOM_ARBITRARY,
        samples=30,
        seed=5,
        actions_per_state=2,
    )
    # arbitrary-state preservation of the positive fragment: also expected
    assert report.result == "HOLDS"
    assert report.states_checked == 30


def test_counterexamples_replay():
    """The strict (negative-edge) reading yields replayable counterexamples."""
    # B has issued a negative; deleting B's own support orphans it
    root = mk_state(
        "A", "ABC", [("A", "B", "TT")], negs=[("B", "C")]
    )
    report = verify_step_invariant(
        Invariant.CONNECTIVITY,
        3,
        VerifyMode.EXHAUSTIVE,
        depth=1,
        root=root,
        include_negatives=True,
    )
    assert report.result == "COUNTEREXAMPLE"
    w = report.witness
    post, _ = apply_action(w.state, w.action)
    replayed = check_connectivity(post)
    assert [str(v) for v in replayed] == [str(v) for v in w.violations]


def test_reachability_closure_states_are_well_formed():
    """Every state the exhaustive exploration can visit is structurally valid."""
    from revograph.errors import NonTotalModelError
    from revograph.model import validate_state
    from revograph.oracle import valid_actions
    from revograph.verifier import empty_state_for

    seen = {empty_state_for(3)}
    frontier = list(seen)
    for _ in range(2):
        nxt = []
        for state in frontier:
            for action in valid_actions(state):
                try:
                    post, _ = apply_action(state, action)
                except NonTotalModelError:
                    continue
                if post not in seen:
                    assert validate_state(post) == []
                    seen.add(post)
                    nxt.append(post)
        frontier = nxt
    assert len(seen) > 50


def test_state_cap_enforced():
    with pytest.raises(ResourceBoundExceededError):
        verify_step_invariant(
            Invariant.CONNECTIVITY, 3, VerifyMode.EXHAUSTIVE, depth=3, state_cap=10
        )


def test_root_state_override(six_principals):
    # depth 0: every valid action out of six_principals itself preserves the invariant
    report = verify_step_invariant(
        Invariant.CONNECTIVITY,
        len(six_principals.principals),
        VerifyMode.EXHAUSTIVE,
        depth=0,
        root=six_principals,
    )
    assert report.result == "HOLDS"
    assert report.states_checked == 1
    assert report.steps_checked > 100
