"""Show how an ℓ-group statement loses its inverses one letter at a time.

Each step picks the leftmost inverted letter r in the first join term that
has one, writes that term as u r⁻¹ v and trades it for a fresh variable y:

    t0 <= u r⁻¹ v ∨ rest   ~>   r y t0 <= r y rest ∨ r y u y t0 ∨ v

    python demos/02_inverse_elimination.py "e <= x^-1*y \\/ y^-1*x"
"""

import argparse

from dlm.decide import decide_dlm
from dlm.invelim import JoinForm, conjuncts, density_step
from dlm.terms import FreshVarSupply, parse_statement, variables

ap = argparse.ArgumentParser()
ap.add_argument("statement", nargs="?", default="e <= x \\/ x^-1")
args = ap.parse_args()

s = parse_statement(args.statement)
print("statement:", s)
supply = FreshVarSupply(frozenset(variables(s)))
everything_valid = True
for k, joins in enumerate(conjuncts(s)):
    jf = JoinForm((), joins, supply)
    print(f"\nconjunct {k}: {jf}   ({jf.inverse_count()} inverted letters)")
    while not jf.is_inverse_free():
        jf = density_step(jf)
        print(f"  -> {jf}")
    supply = jf.fresh
    v = decide_dlm(jf.to_statement())
    everything_valid &= v.is_valid
    print("  valid in distributive ℓ-monoids:", v.is_valid)
    if not v.is_valid:
        print("  chain countermodel:", {n: str(f) for n, f in v.countermodel.assignment.items()})

print("\nvalid in ℓ-groups:", everything_valid)
