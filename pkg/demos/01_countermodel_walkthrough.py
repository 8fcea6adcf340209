"""Walk through one invalid inequality from start to finish.

The default is ``y*x*y <= x*y*x``.  A right-invariant preorder on the
prefixes of its words gives a model on a finite chain.  Lifting that
preorder to a strictly invariant one gives a second model by
piecewise-linear bijections of Q.  Every model is re-evaluated before it is
printed.

    python demos/01_countermodel_walkthrough.py
    python demos/01_countermodel_walkthrough.py "x*y <= x^2 \\/ y^2"
"""

import argparse

from dlm import decide_dlm, decide_lg_inverse_free, lift_preorder, verify_preorder
from dlm.models import build_pl_countermodel
from dlm.normalform import to_basic_inequalities
from dlm.preorder import PairSet
from dlm.terms import parse_statement

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("statement", nargs="?", default="y*x*y <= x*y*x")
args = ap.parse_args()

s = parse_statement(args.statement)
print("statement:", s)
for b in to_basic_inequalities(s):
    print("  basic:", b)

v = decide_dlm(s)
if v.is_valid:
    print("valid in distributive ℓ-monoids; nothing to show")
    raise SystemExit(0)

# the preorder found by the search, listed bottom to top
print("\npreorder on prefixes:", v.preorder.describe())
m = v.countermodel
print(f"chain of size {m.chain_size}, base point {m.base_point}")
for name, f in sorted(m.assignment.items()):
    print(f"  {name} ↦ {f}")
print(f"  lhs = {m.lhs_value} > {m.rhs_value} = rhs   (re-checked: {m.check()})")

# The same failing inequality in ℓ-groups.  The lift turns ∼-classes into
# single points ordered lexicographically by prefixes.
S = PairSet.from_basic(v.failing)
lifted = lift_preorder(v.preorder)
print("\nlifted order:", lifted.describe().replace("≺", "◁"))
print("strictly invariant:", verify_preorder(lifted, strict=True, S=S) == [])
pl = build_pl_countermodel(lifted, S, v.failing.to_statement())
for name, f in sorted(pl.assignment.items()):
    pts = ", ".join(f"({x}, {y})" for x, y in f.breakpoints) or "identity"
    print(f"  {name} ↦ PL through {pts}")
print(f"  at {pl.base_point}: lhs = {pl.lhs_value} > {pl.rhs_value} = rhs   (re-checked: {pl.check()})")

# the direct strict search agrees
print("\ndecide_lg_inverse_free agrees:", decide_lg_inverse_free(s).is_valid == v.is_valid)
