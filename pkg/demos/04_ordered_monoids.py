"""xy² <= e ∨ x²y³ holds in every finite totally ordered monoid but not in ℤ.

We enumerate all totally ordered monoids of each size, test the inequality
in each under every assignment, and then evaluate it in the integers at
x = -3, y = 2.

    python demos/04_ordered_monoids.py --max-size 4
"""

import argparse

from dlm import decide_dlm, enumerate_ordered_monoids
from dlm.models import eval_in_integers
from dlm.oracle import holds_in_ordered_monoid
from dlm.terms import parse_statement

ap = argparse.ArgumentParser()
ap.add_argument("--max-size", type=int, default=3)
args = ap.parse_args()

s = parse_statement("x*y^2 <= e \\/ x^2*y^3")
for n in range(1, args.max_size + 1):
    ms = enumerate_ordered_monoids(n)
    ok = sum(holds_in_ordered_monoid(s, m).is_valid for m in ms)
    print(f"size {n}: {len(ms):3d} ordered monoids, inequality holds in {ok}")

a = {"x": -3, "y": 2}
print(f"in ℤ at x=-3, y=2: lhs = {eval_in_integers(a, s.lhs)}, rhs = {eval_in_integers(a, s.rhs)}")

# distributive ℓ-monoids include ℤ, so the inequality must fail there too
v = decide_dlm(s)
print("valid in distributive ℓ-monoids:", v.is_valid, f"(certificate on a chain of size {v.countermodel.chain_size})")
