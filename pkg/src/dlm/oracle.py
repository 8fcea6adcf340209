"""Brute-force ground truth on small finite models.

Everything here is deliberately independent of the preorder search: terms
are evaluated directly, vectorized over all assignments with numpy.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .models import ChainEndo
from .terms import Identity, Join, LTerm, Meet, Product, Statement, Var, is_inverse_free, parse_statement, variables


class OracleBudgetExceeded(RuntimeError):
    pass


def enumerate_endomorphisms(n: int) -> list[ChainEndo]:
    """All order-preserving self-maps of ``{0, …, n-1}`` in lexicographic order."""
    if n < 1:
        raise ValueError("chain size must be at least 1")
    return [ChainEndo(m) for m in itertools.combinations_with_replacement(range(n), n)]


def endomorphism_count(n: int) -> int:
    return math.comb(2 * n - 1, n - 1)


@dataclass(frozen=True)
class OracleResult:
    is_valid: bool
    assignment: Optional[dict] = None
    point: Optional[int] = None
    checked: int = 0

    def __bool__(self):
        return self.is_valid


def _eval_maps(t: LTerm, env: dict, n: int, rows: int) -> np.ndarray:
    """Values of ``t`` as maps: shape ``(rows, n)``, entry ``[r, p] = (p)t``."""
    if isinstance(t, Identity):
        return np.broadcast_to(np.arange(n), (rows, n))
    if isinstance(t, Var):
        return env[t.name]
    a = _eval_maps(t.left, env, n, rows)
    b = _eval_maps(t.right, env, n, rows)
    if isinstance(t, Product):
        return np.take_along_axis(b, a, axis=1)
    if isinstance(t, Meet):
        return np.minimum(a, b)
    if isinstance(t, Join):
        return np.maximum(a, b)
    raise ValueError("inverses have no meaning in End(n)")


def _violations(s: Statement, lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    return lhs != rhs if s.kind == "eq" else lhs > rhs


def oracle_dlm_validity(
    s: Union[str, Statement], n: int, max_assignments: int = 10**7, chunk: int = 1 << 16
) -> OracleResult:
    """Check ``s`` in ``End(n)`` under every assignment and at every point."""
    if isinstance(s, str):
        s = parse_statement(s, allow_reserved=True)
    if not is_inverse_free(s):
        raise ValueError("statement must be inverse-free")
    maps = np.array([f.map for f in enumerate_endomorphisms(n)], dtype=np.int64)
    m = len(maps)
    names = sorted(variables(s))
    total = m ** len(names)
    if total > max_assignments:
        raise OracleBudgetExceeded(f"{total} assignments exceed the budget of {max_assignments}")
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk))
        rows = len(idx)
        env = {}
        rest = idx.copy()
        # the first variable varies slowest
        for name in reversed(names):
            env[name] = maps[rest % m]
            rest //= m
        bad = _violations(s, _eval_maps(s.lhs, env, n, rows), _eval_maps(s.rhs, env, n, rows))
        hits = np.argwhere(bad)
        if len(hits):
            r, p = hits[0]
            witness = {name: ChainEndo(tuple(int(v) for v in env[name][r])) for name in names}
            return OracleResult(False, witness, int(p), int(start + r + 1))
    return OracleResult(True, checked=total)


# ---------------------------------------------------------------------------
# finite totally ordered monoids


@dataclass(frozen=True)
class OrderedMonoid:
    """Monoid on ``0 < 1 < … < k-1`` whose product is monotone in both arguments."""

    table: tuple[tuple[int, ...], ...]
    unit: int

    @property
    def size(self) -> int:
        return len(self.table)

    def check(self) -> bool:
        t, k, u = self.table, self.size, self.unit
        if any(t[u][a] != a or t[a][u] != a for a in range(k)):
            return False
        for a, b, c in itertools.product(range(k), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                return False
        for a in range(k):
            for b in range(k - 1):
                if t[a][b] > t[a][b + 1] or t[b][a] > t[b + 1][a]:
                    return False
        return True


def enumerate_ordered_monoids(n: int, max_nodes: int = 10**7) -> list[OrderedMonoid]:
    """All totally ordered monoids on ``0 < … < n-1`` (equal tables deduplicated,
    no isomorphism reduction), by cell-by-cell backtracking."""
    if n < 1:
        raise ValueError("size must be at least 1")
    out = []
    nodes = 0
    for unit in range(n):
        t = [[-1] * n for _ in range(n)]
        for a in range(n):
            t[unit][a] = a
            t[a][unit] = a
        cells = [(a, b) for a in range(n) for b in range(n) if t[a][b] < 0]

        def consistent(a, b):
            v = t[a][b]
            for c in range(n):
                w = t[a][c]
                if w >= 0 and ((c < b and w > v) or (c > b and w < v)):
                    return False
                w = t[c][b]
                if w >= 0 and ((c < a and w > v) or (c > a and w < v)):
                    return False
            for x, y, z in itertools.product(range(n), repeat=3):
                xy, yz = t[x][y], t[y][z]
                if xy < 0 or yz < 0:
                    continue
                l, r = t[xy][z], t[x][yz]
                if l >= 0 and r >= 0 and l != r:
                    return False
            return True

        def fill(k):
            nonlocal nodes
            nodes += 1
            if nodes > max_nodes:
                raise OracleBudgetExceeded(f"ordered monoid enumeration exceeded {max_nodes} nodes")
            if k == len(cells):
                out.append(OrderedMonoid(tuple(map(tuple, t)), unit))
                return
            a, b = cells[k]
            for v in range(n):
                t[a][b] = v
                if consistent(a, b):
                    fill(k + 1)
            t[a][b] = -1

        fill(0)
    return out


def eval_in_ordered_monoid(m: OrderedMonoid, t: LTerm, env: dict):
    """Vectorized evaluation: ``env`` maps variables to integer arrays of elements."""
    table = np.array(m.table)
    if isinstance(t, Identity):
        return np.int64(m.unit)
    if isinstance(t, Var):
        return env[t.name]
    a = eval_in_ordered_monoid(m, t.left, env)
    b = eval_in_ordered_monoid(m, t.right, env)
    if isinstance(t, Product):
        return table[a, b]
    if isinstance(t, Meet):
        return np.minimum(a, b)
    if isinstance(t, Join):
        return np.maximum(a, b)
    raise ValueError("inverses have no meaning in a monoid")


def holds_in_ordered_monoid(s: Union[str, Statement], m: OrderedMonoid) -> OracleResult:
    if isinstance(s, str):
        s = parse_statement(s)
    names = sorted(variables(s))
    k = m.size
    grids = np.meshgrid(*([np.arange(k)] * len(names)), indexing="ij") if names else []
    env = {name: g.ravel() for name, g in zip(names, grids)}
    lhs = np.broadcast_to(eval_in_ordered_monoid(m, s.lhs, env), (max(1, k ** len(names)),))
    rhs = np.broadcast_to(eval_in_ordered_monoid(m, s.rhs, env), lhs.shape)
    bad = np.flatnonzero(_violations(s, lhs, rhs))
    if len(bad):
        r = bad[0]
        return OracleResult(False, {name: int(env[name][r]) for name in names}, None, int(r + 1))
    return OracleResult(True, checked=len(lhs))


# ---------------------------------------------------------------------------
# quasiequations on End(n)


def _compose_table(maps: np.ndarray) -> np.ndarray:
    """``out[f, g]`` is the map ``p ↦ g(f(p))``."""
    m = len(maps)
    return maps[np.arange(m)[None, :, None], maps[:, None, :]]


def one_sided_inverses_are_two_sided(n: int) -> bool:
    """``f∘g = id ⇒ g∘f = id`` for all ``f, g`` in ``End(n)``."""
    maps = np.array([f.map for f in enumerate_endomorphisms(n)])
    comp = _compose_table(maps)
    ident = np.arange(n)
    fg_id = (comp == ident).all(axis=2)
    return bool(np.all(~fg_id | fg_id.T))


def right_cancellativity_witness(n: int) -> Optional[tuple[ChainEndo, ChainEndo, ChainEndo]]:
    """``(f, g, h)`` in ``End(n)`` with ``f∘h = g∘h`` (apply ``f`` first) and ``f ≠ g``."""
    maps = enumerate_endomorphisms(n)
    for f, g, h in itertools.product(maps, repeat=3):
        if f != g and f.then(h) == g.then(h):
            return f, g, h
    return None
