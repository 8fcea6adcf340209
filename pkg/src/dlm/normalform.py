"""Normal forms: joins of meets and meets of joins of words.

A join of meets is stored as a frozenset of frozensets of words (outer set =
join, inner sets = meets); a meet of joins the other way round.  Products
distribute over both lattice operations, so every term flattens to either
shape.  In group mode inverses are first pushed to the variables and all
words are kept freely reduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .terms import (
    GrpWord,
    Identity,
    Inverse,
    Join,
    LTerm,
    Meet,
    MonWord,
    Product,
    Statement,
    Var,
    format_group_word,
    format_word,
    group_word_term,
    is_inverse_free,
    join,
    meet,
    reduce_group_word,
    shortlex_key,
    word_term,
)

DEFAULT_SIZE_CAP = 10**6

Word = Union[MonWord, GrpWord]
Form = frozenset  # frozenset[frozenset[Word]]


class NormalizationBlowup(RuntimeError):
    """Raised when a normal form would exceed the configured size cap."""


@dataclass(frozen=True)
class BasicIneq:
    """``⋀ meets <= ⋁ joins`` over words."""

    meets: frozenset
    joins: frozenset
    group: bool = False

    def __post_init__(self):
        if not self.meets or not self.joins:
            raise ValueError("both sides of a basic inequality must be nonempty")

    def sorted_meets(self) -> list:
        return sorted(self.meets, key=shortlex_key)

    def sorted_joins(self) -> list:
        return sorted(self.joins, key=shortlex_key)

    def to_statement(self) -> Statement:
        to_term = group_word_term if self.group else word_term
        return Statement(
            "leq",
            meet(*map(to_term, self.sorted_meets())),
            join(*map(to_term, self.sorted_joins())),
        )

    def sort_key(self):
        return (
            [shortlex_key(w) for w in self.sorted_meets()],
            [shortlex_key(w) for w in self.sorted_joins()],
        )

    def __str__(self):
        fmt = format_group_word if self.group else format_word
        lhs = " ∧ ".join(fmt(w) for w in self.sorted_meets())
        rhs = " ∨ ".join(fmt(w) for w in self.sorted_joins())
        return f"{lhs} ≤ {rhs}"


class _Normalizer:
    def __init__(self, group: bool, cap: int):
        self.group = group
        self.cap = cap

    def check(self, form: Form) -> Form:
        if sum(len(c) for c in form) > self.cap:
            raise NormalizationBlowup(f"normal form exceeds {self.cap} words")
        return form

    def mul(self, a: Word, b: Word) -> Word:
        return reduce_group_word(a + b) if self.group else a + b

    def atom(self, t: LTerm) -> Word:
        if isinstance(t, Identity):
            return ()
        if isinstance(t, Var):
            return ((t.name, 1),) if self.group else (t.name,)
        if isinstance(t, Inverse) and isinstance(t.arg, Var) and self.group:
            return ((t.arg.name, -1),)
        raise TypeError(f"not an atom: {t!r}")

    def product(self, f: Form, g: Form) -> Form:
        # (⋁⋀A)(⋁⋀B) = ⋁⋀{ab}, and dually
        return self.check(
            frozenset(
                frozenset(self.mul(a, b) for a in A for b in B) for A in f for B in g
            )
        )

    @staticmethod
    def union(f: Form, g: Form) -> Form:
        return f | g

    def cross(self, f: Form, g: Form) -> Form:
        return self.check(frozenset(A | B for A in f for B in g))

    def join_of_meets(self, t: LTerm) -> Form:
        if isinstance(t, (Identity, Var, Inverse)):
            return frozenset({frozenset({self.atom(t)})})
        if isinstance(t, Product):
            return self.product(self.join_of_meets(t.left), self.join_of_meets(t.right))
        if isinstance(t, Join):
            return self.check(self.union(self.join_of_meets(t.left), self.join_of_meets(t.right)))
        if isinstance(t, Meet):
            return self.cross(self.join_of_meets(t.left), self.join_of_meets(t.right))
        raise TypeError(t)

    def meet_of_joins(self, t: LTerm) -> Form:
        if isinstance(t, (Identity, Var, Inverse)):
            return frozenset({frozenset({self.atom(t)})})
        if isinstance(t, Product):
            return self.product(self.meet_of_joins(t.left), self.meet_of_joins(t.right))
        if isinstance(t, Meet):
            return self.check(self.union(self.meet_of_joins(t.left), self.meet_of_joins(t.right)))
        if isinstance(t, Join):
            return self.cross(self.meet_of_joins(t.left), self.meet_of_joins(t.right))
        raise TypeError(t)


def push_inverses(t: LTerm, invert: bool = False) -> LTerm:
    """Rewrite ``t`` (or ``t⁻¹``) so that inverses apply only to variables."""
    if isinstance(t, Identity):
        return t
    if isinstance(t, Var):
        return Inverse(t) if invert else t
    if isinstance(t, Inverse):
        return push_inverses(t.arg, not invert)
    if isinstance(t, Product):
        if invert:
            return Product(push_inverses(t.right, True), push_inverses(t.left, True))
        return Product(push_inverses(t.left), push_inverses(t.right))
    if isinstance(t, Meet):
        cls = Join if invert else Meet
        return cls(push_inverses(t.left, invert), push_inverses(t.right, invert))
    if isinstance(t, Join):
        cls = Meet if invert else Join
        return cls(push_inverses(t.left, invert), push_inverses(t.right, invert))
    raise TypeError(t)


def join_of_meets(t: LTerm, group: bool = False, cap: int = DEFAULT_SIZE_CAP) -> Form:
    if group:
        t = push_inverses(t)
    elif not is_inverse_free(t):
        raise ValueError("monoid-mode normalization needs an inverse-free term")
    return _Normalizer(group, cap).join_of_meets(t)


def meet_of_joins(t: LTerm, group: bool = False, cap: int = DEFAULT_SIZE_CAP) -> Form:
    if group:
        t = push_inverses(t)
    elif not is_inverse_free(t):
        raise ValueError("monoid-mode normalization needs an inverse-free term")
    return _Normalizer(group, cap).meet_of_joins(t)


def group_normal_meet_of_joins(t: LTerm, cap: int = DEFAULT_SIZE_CAP) -> Form:
    """Join-sets ``u_1 … u_k`` with ``t`` equal to ``⋀ ⋁ u_i`` in every ℓ-group."""
    return meet_of_joins(t, group=True, cap=cap)


def to_basic_inequalities(
    s: Statement, mode: str = "monoid", cap: int = DEFAULT_SIZE_CAP
) -> tuple[BasicIneq, ...]:
    """Split ``s`` into basic inequalities, deduplicated, in a fixed order."""
    if mode not in ("monoid", "group"):
        raise ValueError(f"unknown mode {mode!r}")
    group = mode == "group"
    if not group and not is_inverse_free(s):
        raise ValueError("monoid mode needs an inverse-free statement")
    pairs = [(s.lhs, s.rhs)]
    if s.kind == "eq":
        pairs.append((s.rhs, s.lhs))
    out = set()
    for lhs, rhs in pairs:
        left = join_of_meets(lhs, group, cap)
        right = meet_of_joins(rhs, group, cap)
        for M in left:
            for J in right:
                out.add(BasicIneq(M, J, group))
        if sum(len(b.meets) + len(b.joins) for b in out) > cap:
            raise NormalizationBlowup(f"normal form exceeds {cap} words")
    return tuple(sorted(out, key=BasicIneq.sort_key))
