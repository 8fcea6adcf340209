"""Eliminating inverses from ℓ-group statements.

Every statement is first brought to the shape ``e <= u_1 ∧ … ∧ u_k`` with
each ``u_i`` a join of reduced group words.  Each conjunct becomes a
:class:`JoinForm` ``t0 <= t1 ∨ … ∨ tn``, and :func:`density_step` removes one
inverted letter at a time using a fresh variable ``y``:

    t0 <= u r⁻¹ v ∨ rest   becomes   r y t0 <= r y rest ∨ r y u y t0 ∨ v

which has the same validity in ℓ-groups.  Once inverse-free, ℓ-group and
distributive ℓ-monoid validity coincide, so :func:`decide_lg` hands the
results to :func:`~dlm.decide.decide_dlm`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .decide import Verdict, decide_dlm
from .normalform import DEFAULT_SIZE_CAP, group_normal_meet_of_joins
from .preorder import Budget
from .terms import (
    E,
    FreshVarSupply,
    GrpWord,
    Inverse,
    Meet,
    MonWord,
    Product,
    Statement,
    group_word_term,
    is_inverse_free,
    join,
    mon_to_grp,
    parse_statement,
    reduce_group_word,
    render_statement,
    shortlex_key,
    variables,
    word_term,
)


@dataclass(frozen=True)
class JoinForm:
    """``t0 <= ⋁ joins`` with ``t0`` an inverse-free word."""

    t0: MonWord
    joins: tuple[GrpWord, ...]
    fresh: FreshVarSupply = field(default_factory=FreshVarSupply)

    def __post_init__(self):
        if not self.joins:
            raise ValueError("a join form needs at least one join term")

    def inverse_count(self) -> int:
        return sum(1 for w in self.joins for _, s in w if s < 0)

    def is_inverse_free(self) -> bool:
        return self.inverse_count() == 0

    def to_statement(self) -> Statement:
        return Statement("leq", word_term(self.t0), join(*map(group_word_term, self.joins)))

    def __str__(self):
        return render_statement(self.to_statement())


def _dedupe(words):
    seen, out = set(), []
    for w in words:
        if w not in seen:
            seen.add(w)
            out.append(w)
    return tuple(out)


def density_step(jf: JoinForm, target: Optional[int] = None) -> JoinForm:
    """Remove the leftmost inverted letter of ``jf.joins[target]``.

    ``target`` defaults to the first join term containing an inverse.
    """
    if target is None:
        target = next((i for i, w in enumerate(jf.joins) if any(s < 0 for _, s in w)), None)
        if target is None:
            raise ValueError("join form is already inverse-free")
    word = jf.joins[target]
    pos = next((k for k, (_, s) in enumerate(word) if s < 0), None)
    if pos is None:
        raise ValueError(f"join term {target} contains no inverse")
    u, r, v = word[:pos], word[pos][0], word[pos + 1 :]
    (y,), fresh = jf.fresh.take(1)
    ry = ((r, 1), (y, 1))
    t0 = mon_to_grp(jf.t0)
    rest = [reduce_group_word(ry + w) for i, w in enumerate(jf.joins) if i != target]
    new_joins = rest + [reduce_group_word(ry + u + ((y, 1),) + t0), v]
    return JoinForm((r, y) + jf.t0, _dedupe(new_joins), fresh)


def conjuncts(s: Statement, cap: int = DEFAULT_SIZE_CAP) -> list[tuple[GrpWord, ...]]:
    """Join sets ``u_1, …, u_k`` with ``s`` equivalent to ``e <= u_1 ∧ … ∧ u_k``."""
    if s.kind == "eq":
        # s = t iff e <= s⁻¹t ∧ st⁻¹
        term = Meet(Product(Inverse(s.lhs), s.rhs), Product(s.lhs, Inverse(s.rhs)))
    else:
        term = Product(Inverse(s.lhs), s.rhs)
    form = group_normal_meet_of_joins(term, cap)
    conj = [tuple(sorted(u, key=shortlex_key)) for u in form]
    return sorted(conj, key=lambda ws: [shortlex_key(w) for w in ws])


def eliminate_to_joinforms(s: Statement, cap: int = DEFAULT_SIZE_CAP) -> list[JoinForm]:
    supply = FreshVarSupply(frozenset(variables(s)))
    out = []
    for joins in conjuncts(s, cap):
        jf = JoinForm((), joins, supply)
        while not jf.is_inverse_free():
            jf = density_step(jf)
        # later conjuncts keep drawing from the same supply so that all
        # generated variables are distinct
        supply = jf.fresh
        out.append(jf)
    return out


def eliminate_inverses(
    s: Union[str, Statement], cap: int = DEFAULT_SIZE_CAP
) -> tuple[Statement, ...]:
    """Inverse-free statements, all valid in ℓ-monoids iff ``s`` holds in ℓ-groups."""
    if isinstance(s, str):
        s = parse_statement(s)
    if is_inverse_free(s):
        return (s,)
    out = []
    for jf in eliminate_to_joinforms(s, cap):
        st = jf.to_statement()
        if st not in out:
            out.append(st)
    return tuple(out)


def decide_lg(
    s: Union[str, Statement],
    budget: Optional[Budget] = None,
    cap: int = DEFAULT_SIZE_CAP,
    workers: int = 1,
) -> Verdict:
    """Validity in all ℓ-groups, via inverse elimination and :func:`decide_dlm`."""
    if isinstance(s, str):
        s = parse_statement(s)
    members = eliminate_inverses(s, cap)
    nodes, seconds = 0, 0.0
    rendered = [render_statement(m) for m in members]
    for k, m in enumerate(members):
        v = decide_dlm(m, budget, cap, workers)
        nodes += v.nodes
        seconds += v.seconds
        if not v.is_valid:
            return Verdict(
                False,
                s,
                v.countermodel,
                v.failing,
                v.preorder,
                nodes,
                seconds,
                v.inequalities,
                details={"eliminated": rendered, "failing_member": render_statement(m)},
            )
    return Verdict(True, s, nodes=nodes, seconds=seconds, details={"eliminated": rendered})
