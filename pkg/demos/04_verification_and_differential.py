#!/usr/bin/env python3
"""Bounded invariant verification and differential testing of the step engine.

Run: python demos/04_verification_and_differential.py   (about a minute)
"""

from revograph import (
    Invariant,
    NonTotalModelError,
    VerifyMode,
    apply_action,
    oracle_apply,
    random_reachable_state,
    valid_actions,
    verify_step_invariant,
)

print("Connectivity preservation, exhaustive over every state reachable")
print("within 3 actions among 3 principals:")
for invariant in Invariant:
    report = verify_step_invariant(invariant, 3, VerifyMode.EXHAUSTIVE, depth=3)
    print(
        f"  {report.invariant:20s} {report.result}  "
        f"(states={report.states_checked}, steps={report.steps_checked}, "
        f"no-model steps={len(report.undefined_steps)})"
    )

print("\nThe same invariants over seeded random reachable states at n = 5:")
for invariant in Invariant:
    report = verify_step_invariant(
        invariant, 5, VerifyMode.RANDOM, samples=300, seed=1, actions_per_state=3
    )
    print(f"  {report.invariant:20s} {report.result}  (states={report.states_checked})")

print("\nDifferential check: declarative engine vs sequential procedures")
print("on 150 random reachable states, every valid action:")
agreements = refusals = 0
for seed in range(150):
    state, _trace = random_reachable_state(seed, 4, 6)
    for action in valid_actions(state):
        expected = oracle_apply(state, action)
        try:
            got, _ = apply_action(state, action)
        except NonTotalModelError:
            refusals += 1
            continue
        assert got.pos == expected.pos and got.neg == expected.neg, (state, action)
        agreements += 1
print(f"  {agreements} steps agree exactly; {refusals} steps have no")
print("  consistent successor under the simultaneous rules (weak local")
print("  revocation over support cycles), which the engine refuses and")
print("  the sequential reading resolves by committing eagerly.")
