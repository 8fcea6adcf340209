"""Right orders: on free monoids through ℓ-monoid validity, and on explicit
finite monoids by direct search.

A right order is a total order with ``a <= b ⇒ ac <= bc``.  For the free
monoid over ``X``, strict constraints ``s_i < t_i`` are satisfiable by a right
order exactly when ``⋀ t_i y_i <= ⋁ s_i y_i`` fails in distributive
ℓ-monoids for distinct new variables ``y_i``; the same answer decides
extendability to a right order on the free group.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .decide import Verdict, decide_dlm
from .preorder import Budget, Propagator, SearchStats
from .terms import (
    FreshVarSupply,
    MonWord,
    Statement,
    join,
    meet,
    parse_word,
    render_word,
    word_term,
)


@dataclass(frozen=True)
class OrderQuery:
    """Strict constraints ``s < t`` between words of a free monoid."""

    constraints: tuple[tuple[MonWord, MonWord], ...]
    alphabet: tuple[str, ...] = ()

    def __post_init__(self):
        letters = set(self.alphabet)
        for s, t in self.constraints:
            letters.update(s)
            letters.update(t)
        object.__setattr__(self, "alphabet", tuple(sorted(letters)))

    @classmethod
    def parse(cls, text: str) -> "OrderQuery":
        """One ``word < word`` per line; blank lines and ``#`` comments ignored."""
        cons = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split("<")
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'word < word'")
            cons.append((parse_word(parts[0], False), parse_word(parts[1], False)))
        return cls(tuple(cons))


@dataclass(frozen=True)
class FreeOrderAnswer:
    exists: bool
    statement: Statement
    verdict: Verdict

    def __bool__(self):
        return self.exists


def order_statement(q: OrderQuery) -> Statement:
    """``⋀ t_i y_i <= ⋁ s_i y_i`` with fresh, pairwise distinct ``y_i``."""
    if not q.constraints:
        raise ValueError("query has no constraints")
    ys = FreshVarSupply(frozenset(q.alphabet)).take(len(q.constraints))[0]
    lhs = meet(*(word_term(t + (y,)) for (_, t), y in zip(q.constraints, ys)))
    rhs = join(*(word_term(s + (y,)) for (s, _), y in zip(q.constraints, ys)))
    return Statement("leq", lhs, rhs)


def right_order_exists_free(q: OrderQuery, budget: Optional[Budget] = None) -> FreeOrderAnswer:
    """Whether some right order on the free monoid satisfies every constraint.

    When it does, the attached verdict carries the falsifying countermodel.
    """
    st = order_statement(q)
    v = decide_dlm(st, budget)
    return FreeOrderAnswer(not v.is_valid, st, v)


# ---------------------------------------------------------------------------
# finite monoids


class MonoidError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteMonoid:
    """Multiplication table ``table[a][b] = a·b`` with a unit."""

    table: tuple[tuple[int, ...], ...]
    unit: int
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        k = len(self.table)
        t = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", t)
        if k == 0 or any(len(row) != k for row in t):
            raise MonoidError("table must be square and nonempty")
        if any(not 0 <= v < k for row in t for v in row):
            raise MonoidError("table entries out of range")
        if not 0 <= self.unit < k:
            raise MonoidError("unit out of range")
        u = self.unit
        if any(t[u][a] != a or t[a][u] != a for a in range(k)):
            raise MonoidError("unit laws fail")
        for a, b, c in itertools.product(range(k), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise MonoidError(f"not associative at ({a}, {b}, {c})")

    @property
    def size(self) -> int:
        return len(self.table)

    @classmethod
    def from_json(cls, data) -> "FiniteMonoid":
        if isinstance(data, str):
            data = json.loads(data)
        m = cls(tuple(map(tuple, data["table"])), int(data["unit"]), tuple(data.get("labels", ())))
        if m.size != int(data["size"]):
            raise MonoidError("size does not match the table")
        return m

    def to_json(self) -> dict:
        out = {"size": self.size, "unit": self.unit, "table": [list(r) for r in self.table]}
        if self.labels:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def end_chain(cls, n: int) -> "FiniteMonoid":
        """Order-endomorphisms of the ``n``-chain, composed left to right."""
        from .oracle import enumerate_endomorphisms

        maps = [f.map for f in enumerate_endomorphisms(n)]
        idx = {m: i for i, m in enumerate(maps)}
        table = tuple(tuple(idx[tuple(g[v] for v in f)] for g in maps) for f in maps)
        labels = tuple("⟨" + ",".join(map(str, m)) + "⟩" for m in maps)
        return cls(table, idx[tuple(range(n))], labels)

    @classmethod
    def cyclic_group(cls, n: int) -> "FiniteMonoid":
        return cls(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0)


def is_right_order(m: FiniteMonoid, order: Sequence[int]) -> bool:
    """``order`` lists the elements from least to greatest."""
    if sorted(order) != list(range(m.size)):
        return False
    pos = {a: i for i, a in enumerate(order)}
    t = m.table
    return all(
        pos[t[a][c]] <= pos[t[b][c]]
        for a in range(m.size)
        for b in range(m.size)
        if pos[a] <= pos[b]
        for c in range(m.size)
    )


def right_order_exists_finite_monoid(
    m: FiniteMonoid, budget: Optional[Budget] = None, stats: Optional[SearchStats] = None
) -> Optional[tuple[int, ...]]:
    """A right order (elements from least to greatest), or ``None`` if none exists."""
    budget = budget or Budget()
    stats = stats if stats is not None else SearchStats()
    k = m.size
    succ = [[(c, m.table[a][c]) for c in range(k)] for a in range(k)]
    prop = Propagator(k, succ, strict=False, antisymmetric=True)
    root = prop.initial()
    if root is None:
        return None
    st = prop.search(root, budget, stats)
    if st is None:
        return None
    le = prop.decode(st)
    order = tuple(sorted(range(k), key=lambda a: sum(le[b][a] for b in range(k))))
    if not is_right_order(m, order):
        raise AssertionError("search returned an order that is not right invariant")
    return order
