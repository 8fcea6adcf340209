"""Countermodels and their evaluation.

Three kinds of model are supported:

* ``end-chain``: order-endomorphisms of the chain ``0 < 1 < … < k-1``;
* ``aut-q``: piecewise-linear order-automorphisms of the rationals;
* ``integers``: ``⟨ℤ, min, max, +, 0⟩``.

Maps act on the right and products compose left to right, so the value of
``xy`` at ``p`` is ``((p)x)y``.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .normalform import BasicIneq
from .preorder import PairSet, PreorderRel
from .terms import (
    Identity,
    Inverse,
    Join,
    LTerm,
    Meet,
    Product,
    Statement,
    Var,
    parse_statement,
    render_statement,
    variables,
)


class ModelError(ValueError):
    pass


# ---------------------------------------------------------------------------
# order-endomorphisms of a finite chain


@dataclass(frozen=True)
class ChainEndo:
    map: tuple[int, ...]

    def __post_init__(self):
        k = len(self.map)
        if k == 0:
            raise ModelError("chain must be nonempty")
        if any(not 0 <= v < k for v in self.map):
            raise ModelError(f"values out of range for chain of size {k}: {self.map}")
        if any(a > b for a, b in zip(self.map, self.map[1:])):
            raise ModelError(f"not order-preserving: {self.map}")

    @property
    def chain_size(self) -> int:
        return len(self.map)

    @classmethod
    def identity(cls, k: int) -> "ChainEndo":
        return cls(tuple(range(k)))

    def __call__(self, p: int) -> int:
        return self.map[p]

    def then(self, other: "ChainEndo") -> "ChainEndo":
        """``p ↦ other(self(p))``."""
        return ChainEndo(tuple(other.map[v] for v in self.map))

    def __str__(self):
        return "⟨" + ",".join(map(str, self.map)) + "⟩"


# ---------------------------------------------------------------------------
# piecewise-linear bijections of Q


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class PLBijection:
    """Strictly increasing piecewise-linear bijection of ``Q``.

    Linear between breakpoints, slope 1 beyond the outermost ones; no
    breakpoints means the identity.  Instances are normalized so that equal
    functions compare equal.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        pts = tuple((_q(x), _q(y)) for x, y in self.breakpoints)
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x0 < x1 and y0 < y1):
                raise ModelError("breakpoints must be strictly increasing in both coordinates")
        object.__setattr__(self, "breakpoints", _normalize(pts))

    @classmethod
    def identity(cls) -> "PLBijection":
        return cls(())

    @classmethod
    def shift(cls, d) -> "PLBijection":
        return cls(((Fraction(0), _q(d)),))

    @classmethod
    def through(cls, points: Sequence[tuple]) -> "PLBijection":
        return cls(tuple(sorted((_q(x), _q(y)) for x, y in points)))

    def __call__(self, q) -> Fraction:
        q = _q(q)
        pts = self.breakpoints
        if not pts:
            return q
        xs = [x for x, _ in pts]
        k = bisect.bisect_left(xs, q)
        if k < len(pts) and xs[k] == q:
            return pts[k][1]
        if k == 0:
            return q + (pts[0][1] - pts[0][0])
        if k == len(pts):
            return q + (pts[-1][1] - pts[-1][0])
        (x0, y0), (x1, y1) = pts[k - 1], pts[k]
        return y0 + (y1 - y0) * (q - x0) / (x1 - x0)

    def inverse(self) -> "PLBijection":
        return PLBijection(tuple((y, x) for x, y in self.breakpoints))

    def then(self, other: "PLBijection") -> "PLBijection":
        """``q ↦ other(self(q))``."""
        inv = self.inverse()
        xs = {x for x, _ in self.breakpoints} | {inv(x) for x, _ in other.breakpoints}
        return PLBijection(tuple((x, other(self(x))) for x in sorted(xs)))

    def _pointwise(self, other: "PLBijection", pick) -> "PLBijection":
        xs = sorted({x for x, _ in self.breakpoints} | {x for x, _ in other.breakpoints})
        pts = []
        prev = None
        for x in xs:
            d = self(x) - other(x)
            if prev is not None:
                px, pd = prev
                if (pd < 0 < d) or (d < 0 < pd):
                    # both sides are linear on [px, x]; add the crossing point
                    c = px + (x - px) * pd / (pd - d)
                    pts.append((c, self(c)))
            pts.append((x, pick(self(x), other(x))))
            prev = (x, d)
        # slope-1 tails on both sides keep the difference constant outside
        return PLBijection(tuple(pts))

    def min(self, other: "PLBijection") -> "PLBijection":
        return self._pointwise(other, min)

    def max(self, other: "PLBijection") -> "PLBijection":
        return self._pointwise(other, max)

    def is_valid(self) -> bool:
        pts = self.breakpoints
        return all(x0 < x1 and y0 < y1 for (x0, y0), (x1, y1) in zip(pts, pts[1:]))

    def to_json(self) -> dict:
        return {
            "breakpoints": [
                [x.numerator, x.denominator, y.numerator, y.denominator]
                for x, y in self.breakpoints
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "PLBijection":
        return cls(
            tuple((Fraction(a, b), Fraction(c, d)) for a, b, c, d in data["breakpoints"])
        )


def _normalize(pts):
    """Drop breakpoints where the slope does not change."""
    if not pts:
        return ()
    out = list(pts)
    changed = True
    while changed and out:
        changed = False
        for k in range(len(out)):
            x, y = out[k]
            if k == 0:
                left = Fraction(1)
            else:
                px, py = out[k - 1]
                left = (y - py) / (x - px)
            if k == len(out) - 1:
                right = Fraction(1)
            else:
                nx, ny = out[k + 1]
                right = (ny - y) / (nx - x)
            if left == right and len(out) > 1:
                del out[k]
                changed = True
                break
    if len(out) == 1:
        x, y = out[0]
        if x == y:
            return ()
        return ((Fraction(0), y - x),)
    return tuple(out)


# ---------------------------------------------------------------------------
# evaluation


def eval_in_end(assignment: Mapping[str, ChainEndo], t: LTerm, p: int) -> int:
    sizes = {f.chain_size for f in assignment.values()}
    if len(sizes) > 1:
        raise ModelError("all endomorphisms must act on the same chain")
    if sizes and not 0 <= p < sizes.pop():
        raise ModelError(f"point {p} out of range")
    return _eval_end(assignment, t, p)


def _eval_end(a, t, p):
    if isinstance(t, Identity):
        return p
    if isinstance(t, Var):
        return a[t.name].map[p]
    if isinstance(t, Product):
        return _eval_end(a, t.right, _eval_end(a, t.left, p))
    if isinstance(t, Meet):
        return min(_eval_end(a, t.left, p), _eval_end(a, t.right, p))
    if isinstance(t, Join):
        return max(_eval_end(a, t.left, p), _eval_end(a, t.right, p))
    raise ModelError("order-endomorphisms do not interpret inverses")


def term_to_pl(assignment: Mapping[str, PLBijection], t: LTerm) -> PLBijection:
    if isinstance(t, Identity):
        return PLBijection.identity()
    if isinstance(t, Var):
        return assignment[t.name]
    if isinstance(t, Inverse):
        return term_to_pl(assignment, t.arg).inverse()
    f, g = term_to_pl(assignment, t.left), term_to_pl(assignment, t.right)
    if isinstance(t, Product):
        return f.then(g)
    if isinstance(t, Meet):
        return f.min(g)
    if isinstance(t, Join):
        return f.max(g)
    raise TypeError(t)


def eval_in_aut_q(assignment: Mapping[str, PLBijection], t: LTerm, q) -> Fraction:
    q = _q(q)
    if isinstance(t, Identity):
        return q
    if isinstance(t, Var):
        return assignment[t.name](q)
    if isinstance(t, Inverse):
        return term_to_pl(assignment, t.arg).inverse()(q)
    if isinstance(t, Product):
        return eval_in_aut_q(assignment, t.right, eval_in_aut_q(assignment, t.left, q))
    if isinstance(t, Meet):
        return min(eval_in_aut_q(assignment, t.left, q), eval_in_aut_q(assignment, t.right, q))
    if isinstance(t, Join):
        return max(eval_in_aut_q(assignment, t.left, q), eval_in_aut_q(assignment, t.right, q))
    raise TypeError(t)


def eval_in_integers(assignment: Mapping[str, int], t: LTerm) -> int:
    """
    >>> from dlm.terms import parse_term
    >>> eval_in_integers({"x": -3, "y": 2}, parse_term("x*y^2"))
    1
    """
    if isinstance(t, Identity):
        return 0
    if isinstance(t, Var):
        return assignment[t.name]
    if isinstance(t, Inverse):
        return -eval_in_integers(assignment, t.arg)
    a, b = eval_in_integers(assignment, t.left), eval_in_integers(assignment, t.right)
    if isinstance(t, Product):
        return a + b
    if isinstance(t, Meet):
        return min(a, b)
    if isinstance(t, Join):
        return max(a, b)
    raise TypeError(t)


# ---------------------------------------------------------------------------
# countermodels

KINDS = ("end-chain", "aut-q", "integers")


@dataclass(frozen=True)
class Countermodel:
    """An assignment in a model plus the base point where ``inequality`` fails."""

    kind: str
    assignment: Mapping[str, Union[ChainEndo, PLBijection, int]]
    base_point: Union[int, Fraction]
    lhs_value: Union[int, Fraction]
    rhs_value: Union[int, Fraction]
    inequality: Statement
    chain_size: Optional[int] = None

    def evaluate(self, t: LTerm):
        if self.kind == "end-chain":
            return eval_in_end(self.assignment, t, self.base_point)
        if self.kind == "aut-q":
            return eval_in_aut_q(self.assignment, t, self.base_point)
        if self.kind == "integers":
            return eval_in_integers(self.assignment, t)
        raise ModelError(f"unknown model kind {self.kind!r}")

    def check(self) -> bool:
        """Re-evaluate ``inequality``: values match the claim and lhs > rhs."""
        lhs = self.evaluate(self.inequality.lhs)
        rhs = self.evaluate(self.inequality.rhs)
        return lhs == self.lhs_value and rhs == self.rhs_value and lhs > rhs

    def falsifies(self, s: Statement) -> bool:
        """Whether ``s`` fails in this model at the base point."""
        lhs, rhs = self.evaluate(s.lhs), self.evaluate(s.rhs)
        return lhs != rhs if s.kind == "eq" else lhs > rhs

    def to_json(self) -> dict:
        def enc(v):
            if self.kind == "aut-q":
                v = _q(v)
                return [v.numerator, v.denominator]
            return v

        out = {"kind": self.kind}
        if self.chain_size is not None:
            out["chain_size"] = self.chain_size
        assignment = {}
        for name in sorted(self.assignment):
            f = self.assignment[name]
            if isinstance(f, ChainEndo):
                assignment[name] = list(f.map)
            elif isinstance(f, PLBijection):
                assignment[name] = f.to_json()
            else:
                assignment[name] = int(f)
        out["assignment"] = assignment
        out["base_point"] = enc(self.base_point)
        out["lhs_value"] = enc(self.lhs_value)
        out["rhs_value"] = enc(self.rhs_value)
        out["inequality"] = render_statement(self.inequality)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Countermodel":
        kind = data["kind"]
        if kind not in KINDS:
            raise ModelError(f"unknown model kind {kind!r}")

        def dec(v):
            return Fraction(v[0], v[1]) if kind == "aut-q" else int(v)

        assignment = {}
        for name, v in data["assignment"].items():
            if kind == "end-chain":
                assignment[name] = ChainEndo(tuple(v))
            elif kind == "aut-q":
                assignment[name] = PLBijection.from_json(v)
            else:
                assignment[name] = int(v)
        return cls(
            kind=kind,
            assignment=assignment,
            base_point=dec(data["base_point"]),
            lhs_value=dec(data["lhs_value"]),
            rhs_value=dec(data["rhs_value"]),
            inequality=parse_statement(data["inequality"], allow_reserved=True),
            chain_size=data.get("chain_size"),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)


def _partial_maps(p: PreorderRel, letters):
    """Class index ``[u] ↦ [ux]`` for each letter, plus the class table."""
    cls = p.class_of()
    maps = {x: {} for x in letters}
    for u in p.words:
        for x in letters:
            ux = u + (x,)
            if ux in cls:
                prev = maps[x].setdefault(cls[u], cls[ux])
                if prev != cls[ux]:
                    raise ModelError("preorder is not right invariant")
    return cls, maps


def _totalize(partial: dict, k: int) -> tuple[int, ...]:
    if not partial:
        return tuple(range(k))
    dom = sorted(partial)
    out = []
    for q in range(k):
        at = bisect.bisect_right(dom, q) - 1
        out.append(partial[dom[at]] if at >= 0 else partial[dom[0]])
    return tuple(out)


def _ineq_for(S: PairSet, ineq: Optional[Statement]) -> Statement:
    if ineq is not None:
        return ineq
    ts = sorted({t for _, t in S.pairs})
    ss = sorted({s for s, _ in S.pairs})
    return BasicIneq(frozenset(ts), frozenset(ss)).to_statement()


def build_end_countermodel(
    p: PreorderRel,
    S: PairSet,
    ineq: Optional[Statement] = None,
    extra_vars=(),
) -> Countermodel:
    """Chain of ``∼``-classes with ``[u] ↦ [ux]`` extended to whole chain maps.

    Undefined points take the image of the greatest defined point below them,
    or of the least defined point if there is none.
    """
    from .lift import verify_preorder

    problems = verify_preorder(p, strict=False, S=S)
    if problems:
        raise ModelError("; ".join(problems))
    letters = sorted(set(S.alphabet) | set(p.universe.alphabet) | set(extra_vars))
    cls, maps = _partial_maps(p, letters)
    k = len(p.classes())
    assignment = {x: ChainEndo(_totalize(maps[x], k)) for x in letters}
    ineq = _ineq_for(S, ineq)
    base = cls[()]
    m = Countermodel("end-chain", assignment, base, 0, 0, ineq, chain_size=k)
    m = Countermodel(
        "end-chain", assignment, base, m.evaluate(ineq.lhs), m.evaluate(ineq.rhs), ineq, k
    )
    if not m.check():
        raise ModelError("constructed end-chain model does not falsify the inequality")
    return m


def build_pl_countermodel(
    p: PreorderRel,
    S: PairSet,
    ineq: Optional[Statement] = None,
    extra_vars=(),
) -> Countermodel:
    """Classes placed at ``0, 1, …``; each ``[u] ↦ [ux]`` interpolated linearly."""
    from .lift import verify_preorder

    problems = verify_preorder(p, strict=True, S=S)
    if problems:
        raise ModelError("; ".join(problems))
    letters = sorted(set(S.alphabet) | set(p.universe.alphabet) | set(extra_vars))
    cls, maps = _partial_maps(p, letters)
    assignment = {x: PLBijection.through(sorted(maps[x].items())) for x in letters}
    ineq = _ineq_for(S, ineq)
    base = Fraction(cls[()])
    m = Countermodel("aut-q", assignment, base, 0, 0, ineq)
    m = Countermodel("aut-q", assignment, base, m.evaluate(ineq.lhs), m.evaluate(ineq.rhs), ineq)
    if not m.check():
        raise ModelError("constructed aut-q model does not falsify the inequality")
    return m
