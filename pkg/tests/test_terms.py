import pytest
from hypothesis import given, settings, strategies as st

from dlm.terms import (
    E,
    FreshVarSupply,
    Identity,
    Inverse,
    Join,
    Meet,
    Product,
    TermSyntaxError,
    Var,
    format_word,
    group_word_term,
    invert_group_word,
    is_inverse_free,
    parse_statement,
    parse_term,
    parse_word,
    reduce_group_word,
    render_statement,
    render_term,
    variables,
)


def test_left_associative_product():
    assert parse_term("x*y*z") == Product(Product(Var("x"), Var("y")), Var("z"))


def test_precedence():
    t = parse_term("x*y /\\ z \\/ e")
    assert isinstance(t, Join)
    assert isinstance(t.left, Meet)
    assert t.right == E


def test_power_sugar():
    assert parse_term("x^3") == parse_term("x*x*x")
    assert parse_term("x^-2") == parse_term("x^-1*x^-1")
    with pytest.raises(TermSyntaxError):
        parse_term("x^0")


def test_statement_kinds():
    assert parse_statement("x <= y").kind == "leq"
    assert parse_statement("x == y").kind == "eq"


@pytest.mark.parametrize("text", ["x <=", "x * <= y", "(x <= y", "x <= y)", "x ! y", "e <= e <= e"])
def test_syntax_errors(text):
    with pytest.raises(TermSyntaxError):
        parse_statement(text)


def test_syntax_error_position():
    with pytest.raises(TermSyntaxError) as exc:
        parse_statement("x <=\n  y * )")
    assert "line 2" in str(exc.value)


def test_reserved_names():
    with pytest.raises(TermSyntaxError):
        parse_statement("_y0 <= x")
    assert variables(parse_statement("_y0 <= x", allow_reserved=True)) == {"_y0", "x"}


def test_var_rejects_identity_name():
    with pytest.raises(ValueError):
        Var("e")


def test_parse_word():
    assert parse_word("x*y*x") == ("x", "y", "x")
    assert parse_word("e") == ()
    with pytest.raises(ValueError):
        parse_word("x \\/ y")


def test_format_word():
    assert format_word(("x", "y")) == "xy"
    assert format_word(()) == "e"
    assert format_word(("x1", "x2")) == "x1·x2"


def test_reduce_group_word():
    w = (("x", 1), ("y", 1), ("y", -1), ("x", -1), ("z", 1))
    assert reduce_group_word(w) == (("z", 1),)
    w = (("x", 1), ("y", -1))
    assert reduce_group_word(w + invert_group_word(w)) == ()


def test_fresh_supply_skips_forbidden():
    names, nxt = FreshVarSupply(frozenset({"_y1"})).take(2)
    assert names == ("_y0", "_y2")
    assert nxt.take(1)[0] == ("_y3",)


def test_inverse_free():
    assert is_inverse_free(parse_statement("x*y <= y"))
    assert not is_inverse_free(parse_statement("x^-1 <= y"))


names = st.sampled_from(["x", "y", "z", "w1"])


def terms(with_inverse=True):
    leaves = st.one_of(st.just(E), names.map(Var))

    def extend(children):
        ops = [
            st.tuples(children, children).map(lambda p: Product(*p)),
            st.tuples(children, children).map(lambda p: Meet(*p)),
            st.tuples(children, children).map(lambda p: Join(*p)),
        ]
        if with_inverse:
            ops.append(children.map(Inverse))
        return st.one_of(*ops)

    return st.recursive(leaves, extend, max_leaves=8)


@settings(max_examples=300, deadline=None)
@given(terms())
def test_render_parse_round_trip(t):
    assert parse_term(render_term(t)) == t


@settings(max_examples=100, deadline=None)
@given(terms(), terms(), st.sampled_from(["leq", "eq"]))
def test_statement_round_trip(a, b, kind):
    from dlm.terms import Statement

    s = Statement(kind, a, b)
    assert parse_statement(render_statement(s)) == s


group_words = st.lists(st.tuples(names, st.sampled_from([1, -1])), max_size=10).map(tuple)


@settings(max_examples=300, deadline=None)
@given(group_words)
def test_reduce_idempotent_and_freely_reduced(w):
    r = reduce_group_word(w)
    assert reduce_group_word(r) == r
    assert all(not (a == c and s == -t) for (a, s), (c, t) in zip(r, r[1:]))
    assert reduce_group_word(r + invert_group_word(r)) == ()


@settings(max_examples=100, deadline=None)
@given(group_words)
def test_group_word_term_round_trip(w):
    r = reduce_group_word(w)
    t = group_word_term(r)
    assert isinstance(t, (Identity, Var, Inverse, Product))
    assert parse_term(render_term(t)) == t
