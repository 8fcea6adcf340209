import pytest

from corpus import corpus
from dlm.normalform import (
    NormalizationBlowup,
    group_normal_meet_of_joins,
    reduce_group_word,
    to_basic_inequalities,
)
from dlm.oracle import oracle_dlm_validity
from dlm.terms import parse_statement, parse_term


def words(b):
    return {"".join(w) for w in b.meets}, {"".join(w) for w in b.joins}


def test_product_distributes_over_join():
    out = to_basic_inequalities(parse_statement("x*(y \\/ z) <= w"))
    assert sorted(words(b) for b in out) == sorted([({"xy"}, {"w"}), ({"xz"}, {"w"})], key=str)


def test_already_basic():
    (b,) = to_basic_inequalities(parse_statement("y*x*y <= x*y*x"))
    assert words(b) == ({"yxy"}, {"xyx"})


def test_meet_on_right_splits():
    out = to_basic_inequalities(parse_statement("x <= y /\\ z"))
    assert sorted(words(b) for b in out) == sorted([({"x"}, {"y"}), ({"x"}, {"z"})], key=str)


def test_equation_gives_both_directions():
    out = to_basic_inequalities(parse_statement("x == y"))
    assert sorted(words(b) for b in out) == sorted([({"x"}, {"y"}), ({"y"}, {"x"})], key=str)


def test_identity_is_empty_word():
    (b,) = to_basic_inequalities(parse_statement("e <= x"))
    assert b.meets == frozenset({()})


def test_group_mode_inverse_antiisomorphism():
    (b,) = to_basic_inequalities(parse_statement("e <= (x /\\ y)^-1"), "group")
    assert b.meets == frozenset({()})
    assert b.joins == frozenset({(("x", -1),), (("y", -1),)})


def test_monoid_mode_rejects_inverses():
    with pytest.raises(ValueError):
        to_basic_inequalities(parse_statement("e <= x^-1"))


def test_group_meet_of_joins_examples():
    assert group_normal_meet_of_joins(parse_term("x^-1")) == frozenset({frozenset({(("x", -1),)})})
    assert group_normal_meet_of_joins(parse_term("(x \\/ y)^-1")) == frozenset(
        {frozenset({(("x", -1),)}), frozenset({(("y", -1),)})}
    )
    assert group_normal_meet_of_joins(parse_term("x \\/ x^-1")) == frozenset(
        {frozenset({(("x", 1),), (("x", -1),)})}
    )


def test_group_words_are_reduced():
    form = group_normal_meet_of_joins(parse_term("(x*y^-1 \\/ y)*(y*x^-1 /\\ x)"))
    for J in form:
        for w in J:
            assert reduce_group_word(w) == w


def test_size_cap():
    s = parse_statement("(x \\/ y)*(x \\/ y)*(x \\/ y)*(x \\/ y) <= z")
    with pytest.raises(NormalizationBlowup):
        to_basic_inequalities(s, cap=5)


def test_output_is_deterministic():
    s = parse_statement("(x \\/ y)*(z /\\ x) <= y*z \\/ x /\\ z")
    assert to_basic_inequalities(s) == to_basic_inequalities(s)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_semantics_preserved_in_small_chains(n):
    for s in corpus(80, seed=11, n_vars=2, max_len=3):
        parts = to_basic_inequalities(s)
        whole = oracle_dlm_validity(s, n).is_valid
        # basic inequalities may mention fewer variables than s
        each = all(oracle_dlm_validity(b.to_statement(), n).is_valid for b in parts)
        assert whole == each, str(s)
