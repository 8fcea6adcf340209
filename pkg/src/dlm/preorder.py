"""Total right-invariant preorders on finite sets of words, and their search.

The search keeps a three-valued matrix ``le`` (unknown / true / false) and
propagates to a fixpoint after every assignment:

* reflexivity, and the required strict pairs ``s ≺ t``;
* totality: ``le[a][b] = F`` forces ``le[b][a] = T``;
* transitivity and both contrapositives;
* right invariance ``le[u][v] = T ⇒ le[ux][vx] = T`` and its contrapositive;
* in strict mode, ``u ≺ v ⇒ vx ⋠ ux`` and ``ux ⪯ vx ⇒ u ⪯ v``;
* optionally antisymmetry (used for right orders on finite monoids).

Branching picks the first unknown entry in a fixed priority order and tries
``True`` before ``False``, so results are deterministic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .normalform import BasicIneq
from .terms import MonWord, format_word, shortlex_key

UNKNOWN, TRUE, FALSE = 0, 1, 2

DEFAULT_MAX_NODES = 10**7
DEFAULT_MAX_SECONDS = 60.0


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, nodes: int, seconds: float):
        super().__init__(message)
        self.nodes = nodes
        self.seconds = seconds


@dataclass(frozen=True)
class Budget:
    max_nodes: int = DEFAULT_MAX_NODES
    max_seconds: float = DEFAULT_MAX_SECONDS

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_seconds <= 0:
            raise ValueError("budgets must be positive")


@dataclass(frozen=True)
class PairSet:
    """Pairs ``(s, t)`` of words that must satisfy ``s ≺ t``."""

    pairs: frozenset
    alphabet: tuple[str, ...]

    @classmethod
    def of(cls, pairs: Iterable[tuple[MonWord, MonWord]], alphabet: Iterable[str] = ()):
        pairs = frozenset((tuple(s), tuple(t)) for s, t in pairs)
        letters = set(alphabet)
        for s, t in pairs:
            letters.update(s)
            letters.update(t)
        return cls(pairs, tuple(sorted(letters)))

    @classmethod
    def from_basic(cls, b: BasicIneq) -> "PairSet":
        if b.group:
            raise ValueError("pair sets are built from monoid-mode inequalities")
        return cls.of((s, t) for s in b.joins for t in b.meets)

    def sorted_pairs(self) -> list[tuple[MonWord, MonWord]]:
        return sorted(self.pairs, key=lambda p: (shortlex_key(p[0]), shortlex_key(p[1])))


@dataclass(frozen=True)
class SubtermSet:
    """A prefix-closed set of words containing ``e``, indexed in shortlex order."""

    words: tuple[MonWord, ...]
    alphabet: tuple[str, ...]
    index: dict = field(compare=False, repr=False, hash=False)

    @classmethod
    def of(cls, words: Iterable[MonWord], alphabet: Iterable[str] = ()) -> "SubtermSet":
        closed = {()}
        for w in words:
            w = tuple(w)
            for k in range(len(w) + 1):
                closed.add(w[:k])
        ordered = tuple(sorted(closed, key=shortlex_key))
        letters = set(alphabet)
        for w in ordered:
            letters.update(w)
        return cls(ordered, tuple(sorted(letters)), {w: i for i, w in enumerate(ordered)})

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return tuple(w) in self.index

    def successor(self, i: int, x: str) -> Optional[int]:
        return self.index.get(self.words[i] + (x,))


def initial_subterms(S: PairSet) -> SubtermSet:
    """All prefixes of words occurring in ``S``, including ``e``.

    >>> [format_word(w) for w in initial_subterms(PairSet.of([(("x","y","x"), ("y","x","y"))])).words]
    ['e', 'x', 'y', 'xy', 'yx', 'xyx', 'yxy']
    """
    words = []
    for s, t in S.pairs:
        words += [s, t]
    return SubtermSet.of(words, S.alphabet)


@dataclass(frozen=True)
class PreorderRel:
    """Three-valued relation over a :class:`SubtermSet` (``None`` = unknown)."""

    universe: SubtermSet
    le: tuple[tuple[Optional[bool], ...], ...]

    @classmethod
    def from_matrix(cls, universe: SubtermSet, matrix) -> "PreorderRel":
        rows = tuple(tuple(None if v is None else bool(v) for v in row) for row in matrix)
        n = len(universe)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("matrix shape does not match the universe")
        return cls(universe, rows)

    @classmethod
    def from_ranks(cls, universe: SubtermSet, rank) -> "PreorderRel":
        """Total preorder with ``u ⪯ v`` iff ``rank(u) <= rank(v)``."""
        r = [rank(w) for w in universe.words]
        return cls(universe, tuple(tuple(a <= b for b in r) for a in r))

    @classmethod
    def from_chain(cls, universe: SubtermSet, chain: Sequence[Sequence[MonWord]]) -> "PreorderRel":
        """Build from classes listed from bottom to top."""
        pos = {}
        for k, cls_words in enumerate(chain):
            for w in cls_words:
                pos[tuple(w)] = k
        missing = [w for w in universe.words if w not in pos]
        if missing:
            raise ValueError(f"chain does not cover {[format_word(w) for w in missing]}")
        return cls.from_ranks(universe, lambda w: pos[w])

    @property
    def words(self):
        return self.universe.words

    def is_determined(self) -> bool:
        return all(v is not None for row in self.le for v in row)

    def leq(self, u: MonWord, v: MonWord) -> Optional[bool]:
        i, j = self.universe.index[tuple(u)], self.universe.index[tuple(v)]
        return self.le[i][j]

    def lt(self, u: MonWord, v: MonWord) -> bool:
        return self.leq(u, v) is True and self.leq(v, u) is False

    def equiv(self, u: MonWord, v: MonWord) -> bool:
        return self.leq(u, v) is True and self.leq(v, u) is True

    def classes(self) -> list[list[MonWord]]:
        """Equivalence classes from bottom to top (needs a total preorder)."""
        if not self.is_determined():
            raise ValueError("relation is not fully determined")
        n = len(self.universe)
        below = [sum(1 for j in range(n) if self.le[j][i] and not self.le[i][j]) for i in range(n)]
        groups: dict[int, list[MonWord]] = {}
        for i, w in enumerate(self.words):
            groups.setdefault(below[i], []).append(w)
        return [groups[k] for k in sorted(groups)]

    def class_of(self) -> dict[MonWord, int]:
        return {w: k for k, ws in enumerate(self.classes()) for w in ws}

    def describe(self) -> str:
        """E.g. ``x ∼ yx ≺ e ∼ y``."""
        return " ≺ ".join(" ∼ ".join(format_word(w) for w in c) for c in self.classes())

    def to_json(self) -> dict:
        from .terms import render_word

        return {
            "universe": [render_word(w) for w in self.words],
            "le": [list(row) for row in self.le],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PreorderRel":
        from .terms import parse_word

        words = [parse_word(w) for w in data["universe"]]
        universe = SubtermSet.of(words)
        if len(universe) != len(words):
            raise ValueError("universe is not prefix closed or has duplicates")
        perm = [universe.index[w] for w in words]
        n = len(words)
        m = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                m[perm[a]][perm[b]] = data["le"][a][b]
        return cls.from_matrix(universe, m)


# ---------------------------------------------------------------------------
# the propagation engine


@dataclass
class SearchStats:
    nodes: int = 0
    seconds: float = 0.0


class Propagator:
    """Constraint propagation for total (strictly) right-invariant preorders.

    ``succ[i]`` lists ``(letter, j)`` with ``j`` the index of ``i·letter``;
    ``preds[j]`` maps a letter to the indices ``i`` with ``i·letter = j``.
    """

    def __init__(self, n: int, succ, strict: bool = False, antisymmetric: bool = False):
        self.n = n
        self.succ = [list(s) for s in succ]
        self.succ_map = [dict(s) for s in self.succ]
        self.preds: list[dict] = [dict() for _ in range(n)]
        for i, s in enumerate(self.succ):
            for x, j in s:
                self.preds[j].setdefault(x, []).append(i)
        self.strict = strict
        self.antisymmetric = antisymmetric
        self.order = self._branch_order()

    def _branch_order(self) -> list[int]:
        # static "most constrained first": pairs sharing more right extensions
        # propagate further, ties broken by position
        n = self.n
        keys = []
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                shared = sum(1 for x in self.succ_map[i] if x in self.succ_map[j])
                keys.append((-shared, max(i, j), i, j))
        keys.sort()
        return [i * n + j for _, _, i, j in keys]

    def initial(self, lt_pairs: Iterable[tuple[int, int]] = (), extra=()):
        """Root state, or ``None`` if the constraints are already inconsistent."""
        st = bytearray(self.n * self.n)
        todo = [(i * self.n + i, TRUE) for i in range(self.n)]
        for s, t in lt_pairs:
            todo.append((s * self.n + t, TRUE))
            todo.append((t * self.n + s, FALSE))
        todo.extend(extra)
        return st if self.propagate(st, todo) else None

    def propagate(self, st: bytearray, todo: list) -> bool:
        """Apply assignments ``(flat_index, value)`` and close under all rules."""
        n = self.n
        succ, succ_map, preds = self.succ, self.succ_map, self.preds
        strict, antisym = self.strict, self.antisymmetric
        queue = []

        def put(i, j, v):
            k = i * n + j
            cur = st[k]
            if cur == v:
                return True
            if cur:
                return False
            st[k] = v
            queue.append(k)
            return True

        for k, v in todo:
            if not put(k // n, k % n, v):
                return False

        while queue:
            k = queue.pop()
            a, b = divmod(k, n)
            rowa, rowb = a * n, b * n
            if st[k] == TRUE:
                for c in range(n):
                    cn = c * n
                    if st[cn + a] == TRUE and not put(c, b, TRUE):
                        return False
                    if st[rowb + c] == TRUE and not put(a, c, TRUE):
                        return False
                    if st[rowa + c] == FALSE and not put(b, c, FALSE):
                        return False
                    if st[cn + b] == FALSE and not put(c, a, FALSE):
                        return False
                mb = succ_map[b]
                for x, ax in succ[a]:
                    bx = mb.get(x)
                    if bx is not None and not put(ax, bx, TRUE):
                        return False
                if antisym and a != b and not put(b, a, FALSE):
                    return False
                if strict:
                    pb = preds[b]
                    for x, us in preds[a].items():
                        vs = pb.get(x)
                        if vs:
                            for u in us:
                                for v in vs:
                                    if not put(u, v, TRUE):
                                        return False
            else:
                if not put(b, a, TRUE):
                    return False
                for c in range(n):
                    if st[rowa + c] == TRUE and not put(c, b, FALSE):
                        return False
                    if st[c * n + b] == TRUE and not put(a, c, FALSE):
                        return False
                pb = preds[b]
                for x, us in preds[a].items():
                    vs = pb.get(x)
                    if vs:
                        for u in us:
                            for v in vs:
                                if not put(u, v, FALSE):
                                    return False
                if strict:
                    # b ≺ a, so b·x ≺ a·x
                    mb = succ_map[b]
                    for x, ax in succ[a]:
                        bx = mb.get(x)
                        if bx is not None and not put(ax, bx, FALSE):
                            return False
        return True

    def search(self, root: bytearray, budget: Budget, stats: SearchStats) -> Optional[bytearray]:
        """Depth-first search below ``root``; ``None`` once the space is exhausted."""
        order = self.order
        n = self.n
        start = time.perf_counter()
        stack = [(root, 0, -1, 0)]
        while stack:
            parent, ptr, k, v = stack.pop()
            if k < 0:
                st = parent
            else:
                st = bytearray(parent)
                if not self.propagate(st, [(k, v)]):
                    continue
            while ptr < len(order) and st[order[ptr]] != UNKNOWN:
                ptr += 1
            if ptr == len(order):
                stats.seconds += time.perf_counter() - start
                return st
            stats.nodes += 1
            if stats.nodes > budget.max_nodes:
                stats.seconds += time.perf_counter() - start
                raise BudgetExceeded(
                    f"search exceeded {budget.max_nodes} nodes", stats.nodes, stats.seconds
                )
            if stats.nodes % 256 == 0 and time.perf_counter() - start > budget.max_seconds:
                stats.seconds += time.perf_counter() - start
                raise BudgetExceeded(
                    f"search exceeded {budget.max_seconds} s", stats.nodes, stats.seconds
                )
            pick = order[ptr]
            stack.append((st, ptr + 1, pick, FALSE))
            stack.append((st, ptr + 1, pick, TRUE))
        stats.seconds += time.perf_counter() - start
        return None

    def decode(self, st: bytearray) -> list[list[Optional[bool]]]:
        n = self.n
        return [
            [None if st[i * n + j] == UNKNOWN else st[i * n + j] == TRUE for j in range(n)]
            for i in range(n)
        ]


def word_propagator(universe: SubtermSet, strict: bool) -> Propagator:
    succ = []
    for i in range(len(universe)):
        succ.append(
            [(x, j) for x in universe.alphabet if (j := universe.successor(i, x)) is not None]
        )
    return Propagator(len(universe), succ, strict=strict)


def search_preorder(
    S: PairSet, strict: bool = False, budget: Budget | None = None, stats: SearchStats | None = None
) -> Optional[PreorderRel]:
    """A total (strictly) right-invariant preorder on ``Sub(S)`` with ``s ≺ t``
    for every pair, or ``None`` when none exists.

    Raises :class:`BudgetExceeded` if the search runs out of nodes or time
    before it can decide.
    """
    budget = budget or Budget()
    stats = stats if stats is not None else SearchStats()
    universe = initial_subterms(S)
    prop = word_propagator(universe, strict)
    idx = universe.index
    root = prop.initial((idx[s], idx[t]) for s, t in S.sorted_pairs())
    if root is None:
        return None
    st = prop.search(root, budget, stats)
    if st is None:
        return None
    return PreorderRel.from_matrix(universe, prop.decode(st))
