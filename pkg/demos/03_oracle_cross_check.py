"""Compare the preorder search with brute force on small chains.

For random inverse-free statements in two variables we ask the search for a
verdict and the numpy oracle for a verdict in End(n), the monoid of
order-preserving maps of an n-element chain.  A valid statement must hold in
every End(n).  An invalid one may need a larger chain than we enumerate, so
the table also shows how often each chain size is enough.

    python demos/03_oracle_cross_check.py --count 300 --seed 1
"""

import argparse
import random
import time
from collections import Counter

import numpy as np

from dlm import decide_dlm, oracle_dlm_validity
from dlm.terms import E, Statement, Var, join, meet, product

ap = argparse.ArgumentParser()
ap.add_argument("--count", type=int, default=200)
ap.add_argument("--seed", type=int, default=0)
ap.add_argument("--max-chain", type=int, default=3)
args = ap.parse_args()

rng = random.Random(args.seed)


def word():
    n = rng.randint(0, 3)
    return product(*(Var(rng.choice("xy")) for _ in range(n))) if n else E


def side():
    return (meet if rng.random() < 0.5 else join)(*(word() for _ in range(rng.randint(1, 2))))


stmts = [Statement("leq", side(), side()) for _ in range(args.count)]

t = time.perf_counter()
verdicts = [decide_dlm(s) for s in stmts]
print(f"search: {len(stmts)} statements in {time.perf_counter() - t:.2f} s")

sizes = Counter()
first_fail = []
for s, v in zip(stmts, verdicts):
    fails_at = None
    for n in range(1, args.max_chain + 1):
        if not oracle_dlm_validity(s, n).is_valid:
            fails_at = n
            break
    if v.is_valid:
        assert fails_at is None, f"oracle refutes a valid verdict: {s}"
        continue
    sizes[v.countermodel.chain_size] += 1
    first_fail.append(fails_at or 0)

first_fail = np.array(first_fail)
print(f"valid: {sum(v.is_valid for v in verdicts)}, invalid: {len(first_fail)}")
print("certificate chain sizes:", dict(sorted(sizes.items())))
for n in range(1, args.max_chain + 1):
    print(f"  invalid and already refuted in End({n}): {np.sum((first_fail > 0) & (first_fail <= n))}")
print(f"  invalid but not refuted up to End({args.max_chain}): {np.sum(first_fail == 0)}")
