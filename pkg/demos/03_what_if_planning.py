#!/usr/bin/env python3
"""What-if planning: which single action reaches a desired outcome, cheapest first.

Run: python demos/03_what_if_planning.py
"""

from revograph import (
    Authorization,
    AuthorizationState,
    Permission,
    parse_goal,
    plan,
    plan_min_cost,
)

P = Permission

state = AuthorizationState(
    soa="A",
    principals=frozenset("ABCDEF"),
    pos=frozenset(
        Authorization(g, e, P[p])
        for (g, e, p) in [
            ("A", "B", "TT"),
            ("A", "D", "TT"),
            ("B", "C", "TF"),
            ("B", "E", "TT"),
            ("D", "B", "FF"),
            ("D", "E", "TT"),
            ("E", "F", "FF"),
        ]
    ),
)

for goal_text in [
    "!access(F)",
    "!access(C) & unchanged(D)",
    "!holds(B,TT) & access(B)",
]:
    goal = parse_goal(goal_text)
    results = plan(state, "A", goal)
    print(f"goal: {goal_text}")
    if not results:
        print("  no single action achieves this")
    for r in results:
        print(f"  cost={r.cost:2d}  do {r.action.scheme.value} "
              f"{r.action.actor} {r.action.target}")
    best = plan_min_cost(state, "A", goal)
    if best:
        print(f"  -> cheapest: do {best.action.scheme.value} "
              f"{best.action.actor} {best.action.target} (cost {best.cost})")
    print()

print(
    "Cost counts changes in principals' derived standing (actively held\n"
    "permissions and access flips), not rewritten edges, so a revocation\n"
    "that forwards rights to keep bystanders whole stays cheap."
)
