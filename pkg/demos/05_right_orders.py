"""Right orders on finite monoids and on free monoids.

A right order is a total order with a <= b implying ac <= bc.  Finite
monoids are searched directly.  For the free monoid a set of strict
constraints s < t is satisfiable exactly when a certain inverse-free
inequality with one fresh variable per constraint is invalid.

    python demos/05_right_orders.py
    python demos/05_right_orders.py --constraints my_constraints.txt
"""

import argparse

from dlm.rightorder import (
    FiniteMonoid,
    OrderQuery,
    right_order_exists_finite_monoid,
    right_order_exists_free,
)

ap = argparse.ArgumentParser()
ap.add_argument("--constraints", help="file with one 'word < word' per line")
args = ap.parse_args()

for label, m in [
    ("End(2)", FiniteMonoid.end_chain(2)),
    ("End(3)", FiniteMonoid.end_chain(3)),
    ("Z/2", FiniteMonoid.cyclic_group(2)),
    ("Z/3", FiniteMonoid.cyclic_group(3)),
]:
    order = right_order_exists_finite_monoid(m)
    if order is None:
        print(f"{label:7s} ({m.size:2d} elements): no right order")
    else:
        names = m.labels or [str(a) for a in range(m.size)]
        print(f"{label:7s} ({m.size:2d} elements): " + " < ".join(names[a] for a in order))

queries = ["x < y", "x*y < y*x\ny*x < x*y", "e < x\nx*x < x", "x < e\ne < y\nx*y < y"]
if args.constraints:
    with open(args.constraints) as fh:
        queries = [fh.read()]

print()
for text in queries:
    ans = right_order_exists_free(OrderQuery.parse(text))
    shown = ", ".join(line.strip() for line in text.splitlines() if line.strip())
    print(f"{{{shown}}}: {'exists' if ans.exists else 'impossible'}")
    print(f"    via {ans.statement}")
