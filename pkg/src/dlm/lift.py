"""Turning a total right-invariant preorder into a strictly invariant one.

Words are read as ``x_k ⋯ x_1`` (``x_k`` is the first letter).  For
``i >= 1`` the prefix ``x_k ⋯ x_i`` is the word with its last ``i - 1``
letters removed, and ``e`` once ``i > k``.  With ``∼`` and ``≺`` taken from
the input preorder,

* ``u ◁ v`` iff for some ``j <= len(v) + 1`` all prefixes ``i < j`` of ``u``
  and ``v`` are ``∼`` and either the ``j``-th prefixes satisfy ``≺`` or
  ``j = len(u) + 2``;
* ``u ≡ v`` iff ``len(u) = len(v)`` and all prefixes are ``∼``;
* the lifted relation is ``◁ ∪ ≡``.
"""

from __future__ import annotations

from typing import Optional

from .preorder import PairSet, PreorderRel, SubtermSet
from .terms import MonWord, format_word


class PreconditionError(ValueError):
    pass


def verify_preorder(
    p: PreorderRel,
    universe: Optional[SubtermSet] = None,
    strict: bool = False,
    S: Optional[PairSet] = None,
) -> list[str]:
    """Every violated property of ``p``; an empty list means all checks pass."""
    universe = universe or p.universe
    if universe.words != p.universe.words:
        return ["relation is defined over a different universe"]
    if not p.is_determined():
        return ["relation is not fully determined"]
    words = universe.words
    n = len(words)
    le = p.le
    fw = format_word
    report = []
    for i in range(n):
        if not le[i][i]:
            report.append(f"not reflexive at {fw(words[i])}")
    for i in range(n):
        for j in range(n):
            if not le[i][j] and not le[j][i]:
                if i < j:
                    report.append(f"not total: {fw(words[i])} and {fw(words[j])} incomparable")
                continue
            if not le[i][j]:
                continue
            for k in range(n):
                if le[j][k] and not le[i][k]:
                    report.append(
                        f"not transitive: {fw(words[i])} ⪯ {fw(words[j])} ⪯ {fw(words[k])}"
                    )
    for i in range(n):
        for j in range(n):
            for x in universe.alphabet:
                ix, jx = universe.successor(i, x), universe.successor(j, x)
                if ix is None or jx is None:
                    continue
                u, v, ux, vx = (fw(words[t]) for t in (i, j, ix, jx))
                if le[i][j] and not le[ix][jx]:
                    report.append(f"not right invariant: {u} ⪯ {v} but not {ux} ⪯ {vx}")
                if strict and le[i][j] and not le[j][i] and not (le[ix][jx] and not le[jx][ix]):
                    if le[jx][ix] and le[ix][jx]:
                        report.append(f"{u} ≺ {v} but {ux} ∼ {vx}")
                    else:
                        report.append(f"{u} ≺ {v} but not {ux} ≺ {vx}")
    if S is not None:
        for s, t in S.sorted_pairs():
            if s not in universe or t not in universe:
                report.append(f"{fw(s)} or {fw(t)} is outside the universe")
            elif not p.lt(s, t):
                report.append(f"required {fw(s)} ≺ {fw(t)} fails")
    return report


def _prefix(w: MonWord, i: int) -> MonWord:
    return w[: max(0, len(w) - i + 1)]


def lift_preorder(p: PreorderRel, universe: Optional[SubtermSet] = None) -> PreorderRel:
    """Strictly right-invariant total preorder ``⊴`` with ``≺ ⊆ ◁``."""
    universe = universe or p.universe
    problems = verify_preorder(p, universe)
    if problems:
        raise PreconditionError("; ".join(problems))
    words = universe.words

    def sim(a, b):
        return p.equiv(a, b)

    def prec(a, b):
        return p.lt(a, b)

    def lhd(u, v):
        k, l = len(u), len(v)
        for j in range(1, l + 2):
            # all i < j already ∼ at this point
            if prec(_prefix(u, j), _prefix(v, j)) or j == k + 2:
                return True
            if not sim(_prefix(u, j), _prefix(v, j)):
                return False
        return False

    def same(u, v):
        return len(u) == len(v) and all(
            sim(_prefix(u, i), _prefix(v, i)) for i in range(1, len(u) + 1)
        )

    m = [[lhd(u, v) or same(u, v) for v in words] for u in words]
    return PreorderRel.from_matrix(universe, m)
