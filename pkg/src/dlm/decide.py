"""Deciding inverse-free statements in distributive ℓ-monoids and ℓ-groups.

A statement is split into basic inequalities ``⋀ t_i <= ⋁ s_j``.  Each one
fails exactly when some total right-invariant preorder on the prefixes of its
words puts every ``s_j`` strictly below every ``t_i`` (strictly invariant
preorders for ℓ-groups).  The search either exhausts the finite space
(``Valid``) or returns such a preorder, which is turned into a countermodel
and checked by plain evaluation before it is reported.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from .models import Countermodel, build_end_countermodel, build_pl_countermodel
from .normalform import DEFAULT_SIZE_CAP, BasicIneq, to_basic_inequalities
from .preorder import (
    Budget,
    BudgetExceeded,
    PairSet,
    PreorderRel,
    SearchStats,
    initial_subterms,
    search_preorder,
)
from .terms import Statement, is_inverse_free, parse_statement, variables

__all__ = [
    "Budget",
    "BudgetExceeded",
    "PairSet",
    "Verdict",
    "decide_dlm",
    "decide_lg_inverse_free",
    "initial_subterms",
    "search_preorder",
]


class CertificateError(RuntimeError):
    """A constructed countermodel failed independent re-evaluation."""


@dataclass(frozen=True)
class Verdict:
    is_valid: bool
    statement: Statement
    countermodel: Optional[Countermodel] = None
    failing: Optional[BasicIneq] = None
    preorder: Optional[PreorderRel] = None
    nodes: int = 0
    seconds: float = 0.0
    inequalities: int = 0
    details: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.is_valid

    def to_json(self) -> dict:
        out = {
            "statement": str(self.statement),
            "verdict": "valid" if self.is_valid else "invalid",
            "basic_inequalities": self.inequalities,
            "search_nodes": self.nodes,
            "seconds": round(self.seconds, 6),
        }
        if self.failing is not None:
            out["failing_inequality"] = str(self.failing.to_statement())
        if self.countermodel is not None:
            out["countermodel"] = self.countermodel.to_json()
        out.update(self.details)
        return out


def _as_statement(s: Union[str, Statement]) -> Statement:
    return parse_statement(s, allow_reserved=True) if isinstance(s, str) else s


def _search_one(args):
    b, strict, budget = args
    stats = SearchStats()
    rel = search_preorder(PairSet.from_basic(b), strict=strict, budget=budget, stats=stats)
    return rel, stats


def _decide(s, strict: bool, budget: Optional[Budget], cap: int, workers: int) -> Verdict:
    s = _as_statement(s)
    if not is_inverse_free(s):
        raise ValueError("statement must be inverse-free")
    budget = budget or Budget()
    basics = to_basic_inequalities(s, "monoid", cap)
    nodes, seconds = 0, 0.0

    if workers > 1 and len(basics) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_search_one, [(b, strict, budget) for b in basics])
            found = _first_failure(basics, results)
    else:
        found = _first_failure(basics, map(_search_one, [(b, strict, budget) for b in basics]))
    b, rel, nodes, seconds = found
    if rel is None:
        return Verdict(True, s, nodes=nodes, seconds=seconds, inequalities=len(basics))

    S = PairSet.from_basic(b)
    build = build_pl_countermodel if strict else build_end_countermodel
    model = build(rel, S, b.to_statement(), extra_vars=sorted(variables(s)))
    # independent re-check: plain evaluation of both the basic inequality
    # and the original statement
    if not model.check() or not model.falsifies(s):
        raise CertificateError(f"countermodel for {s} failed re-evaluation")
    return Verdict(
        False, s, model, b, rel, nodes=nodes, seconds=seconds, inequalities=len(basics)
    )


def _first_failure(basics, results):
    nodes, seconds = 0, 0.0
    for b, (rel, stats) in zip(basics, results):
        nodes += stats.nodes
        seconds += stats.seconds
        if rel is not None:
            return b, rel, nodes, seconds
    return None, None, nodes, seconds


def decide_dlm(
    s: Union[str, Statement],
    budget: Optional[Budget] = None,
    cap: int = DEFAULT_SIZE_CAP,
    workers: int = 1,
) -> Verdict:
    """Validity of an inverse-free statement in all distributive ℓ-monoids.

    An invalid verdict carries a countermodel on a finite chain.
    """
    return _decide(s, False, budget, cap, workers)


def decide_lg_inverse_free(
    s: Union[str, Statement],
    budget: Optional[Budget] = None,
    cap: int = DEFAULT_SIZE_CAP,
    workers: int = 1,
) -> Verdict:
    """Validity of an inverse-free statement in all ℓ-groups.

    Searches strictly invariant preorders directly; an invalid verdict carries
    piecewise-linear automorphisms of ``Q``.
    """
    return _decide(s, True, budget, cap, workers)
