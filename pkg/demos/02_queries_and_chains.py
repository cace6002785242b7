#!/usr/bin/env python3
"""Permission queries: who holds what, who can grant, who has access.

Run: python demos/02_queries_and_chains.py
"""

from revograph import (
    Action,
    ChainMode,
    Permission,
    Scheme,
    apply_action,
    can_grant,
    empty_state,
    holds_chain,
    independent,
    query_access,
    query_holders,
    simulate,
)

P = Permission

# grow a delegation chain from scratch
state = empty_state("Root", ["Root", "Ann", "Bo", "Cy"])
state, _ = simulate(
    state,
    [
        Action(Scheme.GRANT_TT, "Root", "Ann"),
        Action(Scheme.GRANT_TF, "Ann", "Bo"),
        Action(Scheme.GRANT_TT, "Bo", "Cy"),  # Bo only holds TF: grants TF
    ],
)

print("After three grants:")
for perm in P:
    print(f"  holders of {perm.value}: {sorted(query_holders(state, perm, ChainMode.ALL))}")
print(f"  access right: {sorted(query_access(state))}")
print(f"  Bo can grant TF?  {can_grant(state, 'Bo', P.TF, ChainMode.ACTIVE_ONLY)}")
print(f"  Bo can grant TT?  {can_grant(state, 'Bo', P.TT, ChainMode.ACTIVE_ONLY)}")
print(f"  Cy's edge was downgraded to what Bo could pass on:")
print(f"    Cy holds TF: {holds_chain(state, 'Cy', P.TF, ChainMode.ALL)}")

# independence drives the strong schemes: Bo depends entirely on Ann
print(f"  Bo independent of Ann w.r.t. TF?  {independent(state, 'Bo', 'Ann', P.TF)}")
print(f"  Ann independent of Bo w.r.t. TT?  {independent(state, 'Ann', 'Bo', P.TT)}")

# a negative revocation inactivates without deleting; being *local*, it
# also re-issues what Ann's grantees would otherwise lose
state, delta = apply_action(state, Action(Scheme.WLN, "Root", "Ann"))
print("\nAfter a weak local negative from Root to Ann:")
print(f"  inactivated: {sorted((g, e, p.value) for g, e, p in delta.inactivated)}")
print(f"  re-issued:   {sorted((g, e, p.value) for g, e, p in delta.added)}")
print(f"  access right: {sorted(query_access(state))}   (only Ann lost out)")
print(f"  Ann still *has* TT through the inactive edge: "
      f"{holds_chain(state, 'Ann', P.TT, ChainMode.ALL)}")
print(f"  ... but not actively: "
      f"{holds_chain(state, 'Ann', P.TT, ChainMode.ACTIVE_ONLY)}")
print(f"  Bo keeps TF actively via the forwarded Root edge: "
      f"{holds_chain(state, 'Bo', P.TF, ChainMode.ACTIVE_ONLY)}")
