"""Terms of lattice-ordered monoids and groups.

Terms are immutable trees built from ``Identity``, ``Var``, ``Inverse``,
``Product``, ``Meet`` and ``Join``.  Words are kept flat: a monoid word is a
tuple of variable names, a group word is a tuple of ``(name, sign)`` pairs
with ``sign`` in ``{+1, -1}``.

Grammar accepted by :func:`parse_statement`::

    statement := term ("<=" | "==") term
    term      := meet ( "\\/" meet )*
    meet      := prod ( "/\\" prod )*
    prod      := factor ( "*" factor )*
    factor    := atom ( "^-1" | "^" INT | "^-" INT )*
    atom      := "e" | VAR | "(" term ")"
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Iterator, Union

MonWord = tuple[str, ...]
GrpWord = tuple[tuple[str, int], ...]

RESERVED_PREFIX = "_y"
_VAR_RE = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*\Z")


class TermSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not _VAR_RE.match(self.name) or self.name == "e":
            raise ValueError(f"invalid variable name {self.name!r}")
        object.__setattr__(self, "name", sys.intern(self.name))


@dataclass(frozen=True)
class Inverse:
    arg: "LTerm"


@dataclass(frozen=True)
class Product:
    left: "LTerm"
    right: "LTerm"


@dataclass(frozen=True)
class Meet:
    left: "LTerm"
    right: "LTerm"


@dataclass(frozen=True)
class Join:
    left: "LTerm"
    right: "LTerm"


LTerm = Union[Identity, Var, Inverse, Product, Meet, Join]
E = Identity()


@dataclass(frozen=True)
class Statement:
    kind: str  # "leq" or "eq"
    lhs: LTerm
    rhs: LTerm

    def __post_init__(self):
        if self.kind not in ("leq", "eq"):
            raise ValueError(f"unknown statement kind {self.kind!r}")

    def __str__(self):
        return render_statement(self)


def Leq(lhs: LTerm, rhs: LTerm) -> Statement:
    return Statement("leq", lhs, rhs)


def Eq(lhs: LTerm, rhs: LTerm) -> Statement:
    return Statement("eq", lhs, rhs)


# ---------------------------------------------------------------------------
# constructors and queries


def product(*terms: LTerm) -> LTerm:
    """Left-associated product; the empty product is ``e``."""
    if not terms:
        return E
    return reduce(Product, terms)


def meet(*terms: LTerm) -> LTerm:
    if not terms:
        raise ValueError("empty meet")
    return reduce(Meet, terms)


def join(*terms: LTerm) -> LTerm:
    if not terms:
        raise ValueError("empty join")
    return reduce(Join, terms)


def word_term(word: MonWord) -> LTerm:
    return product(*(Var(x) for x in word))


def group_word_term(word: GrpWord) -> LTerm:
    return product(*(Var(x) if s > 0 else Inverse(Var(x)) for x, s in word))


def subterms(t: LTerm) -> Iterator[LTerm]:
    yield t
    if isinstance(t, Inverse):
        yield from subterms(t.arg)
    elif isinstance(t, (Product, Meet, Join)):
        yield from subterms(t.left)
        yield from subterms(t.right)


def variables(t: Union[LTerm, Statement]) -> frozenset[str]:
    if isinstance(t, Statement):
        return variables(t.lhs) | variables(t.rhs)
    return frozenset(s.name for s in subterms(t) if isinstance(s, Var))


def is_inverse_free(t: Union[LTerm, Statement]) -> bool:
    if isinstance(t, Statement):
        return is_inverse_free(t.lhs) and is_inverse_free(t.rhs)
    return not any(isinstance(s, Inverse) for s in subterms(t))


def inverse_count(t: Union[LTerm, Statement]) -> int:
    if isinstance(t, Statement):
        return inverse_count(t.lhs) + inverse_count(t.rhs)
    return sum(isinstance(s, Inverse) for s in subterms(t))


# ---------------------------------------------------------------------------
# words


def reduce_group_word(letters: Iterable[tuple[str, int]]) -> GrpWord:
    """Freely reduce a sequence of signed letters.

    >>> reduce_group_word([("x", 1), ("y", 1), ("y", -1), ("x", 1)])
    (('x', 1), ('x', 1))
    >>> reduce_group_word([("x", 1), ("x", -1)])
    ()
    """
    out: list[tuple[str, int]] = []
    for x, s in letters:
        if s not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {s}")
        if out and out[-1][0] == x and out[-1][1] == -s:
            out.pop()
        else:
            out.append((x, s))
    return tuple(out)


def invert_group_word(w: GrpWord) -> GrpWord:
    return tuple((x, -s) for x, s in reversed(w))


def mon_to_grp(w: MonWord) -> GrpWord:
    return tuple((x, 1) for x in w)


def grp_to_mon(w: GrpWord) -> MonWord:
    if any(s < 0 for _, s in w):
        raise ValueError("group word contains an inverse")
    return tuple(x for x, _ in w)


def shortlex_key(w):
    return (len(w), w)


def format_word(w: MonWord) -> str:
    """Compact display form: ``xyx`` for one-letter names, else ``a·bb``."""
    if not w:
        return "e"
    if all(len(x) == 1 for x in w):
        return "".join(w)
    return "·".join(w)


def format_group_word(w: GrpWord) -> str:
    if not w:
        return "e"
    return "·".join(x if s > 0 else f"{x}⁻¹" for x, s in w)


# ---------------------------------------------------------------------------
# fresh variables


@dataclass(frozen=True)
class FreshVarSupply:
    forbidden: frozenset[str] = frozenset()
    counter: int = 0

    def take(self, n: int) -> tuple[tuple[str, ...], "FreshVarSupply"]:
        if n < 0:
            raise ValueError("n must be nonnegative")
        names = []
        k = self.counter
        while len(names) < n:
            name = f"{RESERVED_PREFIX}{k}"
            k += 1
            if name not in self.forbidden:
                names.append(name)
        return tuple(names), FreshVarSupply(self.forbidden, k)


def fresh_variables(supply: FreshVarSupply, n: int) -> tuple[str, ...]:
    """The next ``n`` names from ``supply``; see :meth:`FreshVarSupply.take`.

    >>> fresh_variables(FreshVarSupply(frozenset({"x", "y"})), 2)
    ('_y0', '_y1')
    >>> fresh_variables(FreshVarSupply(frozenset({"_y0"})), 1)
    ('_y1',)
    """
    return supply.take(n)[0]


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><=|==|\\/|/\\|\*|\(|\))
  | (?P<pow>\^\s*(?P<neg>-)?\s*(?P<exp>\d+))
  | (?P<name>[a-zA-Z_][a-zA-Z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    value: str
    line: int
    column: int
    exponent: int = 0


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        if m.lastgroup == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        elif m.group("pow") is not None:
            exp = int(m.group("exp"))
            if exp == 0:
                raise TermSyntaxError("exponents must be positive", line, col)
            sign = -1 if m.group("neg") else 1
            tokens.append(_Token("pow", m.group(), line, col, sign * exp))
        elif m.lastgroup == "name":
            tokens.append(_Token("name", m.group(), line, col))
        else:
            tokens.append(_Token("op", m.group(), line, col))
        pos = m.end()
    tokens.append(_Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_reserved: bool):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.allow_reserved = allow_reserved

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise TermSyntaxError(message, tok.line, tok.column)

    def expect(self, value: str) -> _Token:
        tok = self.next()
        if tok.kind != "op" or tok.value != value:
            self.error(f"expected {value!r}, found {tok.value or 'end of input'!r}", tok)
        return tok

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.value == value

    def statement(self) -> Statement:
        lhs = self.term()
        tok = self.next()
        if tok.kind == "op" and tok.value == "<=":
            kind = "leq"
        elif tok.kind == "op" and tok.value == "==":
            kind = "eq"
        else:
            self.error("expected '<=' or '=='", tok)
        rhs = self.term()
        if self.peek().kind != "eof":
            self.error(f"unexpected {self.peek().value!r}")
        return Statement(kind, lhs, rhs)

    def term(self) -> LTerm:
        t = self.meet()
        while self.at("\\/"):
            self.next()
            t = Join(t, self.meet())
        return t

    def meet(self) -> LTerm:
        t = self.prod()
        while self.at("/\\"):
            self.next()
            t = Meet(t, self.prod())
        return t

    def prod(self) -> LTerm:
        t = self.factor()
        while self.at("*"):
            self.next()
            t = Product(t, self.factor())
        return t

    def factor(self) -> LTerm:
        t = self.atom()
        while self.peek().kind == "pow":
            k = self.next().exponent
            base = Inverse(t) if k < 0 else t
            t = product(*([base] * abs(k)))
        return t

    def atom(self) -> LTerm:
        tok = self.next()
        if tok.kind == "name":
            if tok.value == "e":
                return E
            if tok.value.startswith(RESERVED_PREFIX) and not self.allow_reserved:
                self.error(f"variable names starting with {RESERVED_PREFIX!r} are reserved", tok)
            return Var(tok.value)
        if tok.kind == "op" and tok.value == "(":
            t = self.term()
            self.expect(")")
            return t
        self.error(f"unexpected {tok.value or 'end of input'!r}", tok)


def parse_statement(text: str, allow_reserved: bool = False) -> Statement:
    """Parse ``lhs <= rhs`` or ``lhs == rhs``.

    Names starting with ``_y`` are reserved for generated variables and are
    rejected unless ``allow_reserved`` is set.
    """
    return _Parser(text, allow_reserved).statement()


def parse_term(text: str, allow_reserved: bool = False) -> LTerm:
    p = _Parser(text, allow_reserved)
    t = p.term()
    if p.peek().kind != "eof":
        p.error(f"unexpected {p.peek().value!r}")
    return t


def parse_word(text: str, allow_reserved: bool = True) -> MonWord:
    """Parse a product of variables (``e`` for the empty word)."""
    t = parse_term(text, allow_reserved)
    letters: list[str] = []

    def walk(s):
        if isinstance(s, Identity):
            return
        if isinstance(s, Var):
            letters.append(s.name)
        elif isinstance(s, Product):
            walk(s.left)
            walk(s.right)
        else:
            raise ValueError(f"not a monoid word: {text!r}")

    walk(t)
    return tuple(letters)


# ---------------------------------------------------------------------------
# rendering

_PREC = {Join: 1, Meet: 2, Product: 3}


def render_term(t: LTerm) -> str:
    if isinstance(t, Identity):
        return "e"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Inverse):
        inner = render_term(t.arg)
        if not isinstance(t.arg, (Identity, Var, Inverse)):
            inner = f"({inner})"
        return f"{inner}^-1"
    prec = _PREC[type(t)]
    left = render_term(t.left)
    right = render_term(t.right)
    # operators associate to the left, so a right child of equal precedence
    # needs parentheses to round-trip
    if type(t.left) in _PREC and _PREC[type(t.left)] < prec:
        left = f"({left})"
    if type(t.right) in _PREC and _PREC[type(t.right)] <= prec:
        right = f"({right})"
    sep = {Join: " \\/ ", Meet: " /\\ ", Product: "*"}[type(t)]
    return f"{left}{sep}{right}"


def render_statement(s: Statement) -> str:
    op = "<=" if s.kind == "leq" else "=="
    return f"{render_term(s.lhs)} {op} {render_term(s.rhs)}"


def render_word(w: MonWord) -> str:
    return "*".join(w) if w else "e"
