#!/usr/bin/env python3
"""A tour of the eight revocation schemes on one worked example.

Builds the six-principal authorization graph used throughout the library's
tests, then applies each revocation scheme from A to B to a fresh copy and
prints the resulting authorization set.

Run: python demos/01_revocation_schemes_tour.py
"""

from revograph import (
    Action,
    Authorization,
    AuthorizationState,
    NonTotalModelError,
    Permission,
    Scheme,
    apply_action,
    serialize_spec,
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

print("Initial authorization specification")
print("=" * 50)
print(serialize_spec(state))

for scheme in [
    Scheme.WLD,
    Scheme.WGD,
    Scheme.SLD,
    Scheme.SGD,
    Scheme.WLN,
    Scheme.WGN,
    Scheme.SLN,
    Scheme.SGN,
]:
    print(f"--- {scheme.value} from A to B " + "-" * 28)
    try:
        post, delta = apply_action(state, Action(scheme, "A", "B"))
    except NonTotalModelError as exc:
        print(f"no successor state: {exc}\n")
        continue
    print(serialize_spec(post), end="")
    if delta.deleted:
        print("deleted:    ", sorted((g, e, p.value) for g, e, p in delta.deleted))
    if delta.added:
        print("added:      ", sorted((g, e, p.value) for g, e, p in delta.added))
    if delta.inactivated:
        print("inactivated:", sorted((g, e, p.value) for g, e, p in delta.inactivated))
    if delta.neg_added:
        print("neg added:  ", sorted(delta.neg_added))
    print()

print(
    "Weak schemes spare B's other grants (D->B stays); strong ones remove\n"
    "them.  Local schemes keep downstream principals whole by re-issuing\n"
    "their permissions from A; global ones cascade.  Negative schemes\n"
    "inactivate (dashed in DOT output) instead of deleting, and record a\n"
    "negative authorization that persists from then on."
)
