import pytest

from corpus import corpus
from dlm.decide import decide_dlm, decide_lg_inverse_free
from dlm.preorder import Budget, BudgetExceeded, PairSet, search_preorder
from dlm.models import Countermodel
from dlm.terms import parse_statement


def test_example_invalid():
    v = decide_dlm("y*x*y <= x*y*x")
    assert not v.is_valid
    m = v.countermodel
    assert m.kind == "end-chain" and m.chain_size <= 7
    assert m.check() and m.falsifies(parse_statement("y*x*y <= x*y*x"))


@pytest.mark.parametrize("s", ["x /\\ y <= x \\/ y", "x <= x", "x*(y \\/ z) == x*y \\/ x*z", "e <= e"])
def test_valid(s):
    assert decide_dlm(s).is_valid
    assert decide_lg_inverse_free(s).is_valid


def test_square_inequality_is_invalid():
    # x ↦ ⟨1,1,1⟩, y ↦ ⟨0,2,2⟩ at 0 gives xy = 2 > max(1, 0)
    v = decide_dlm("x*y <= x^2 \\/ y^2")
    assert not v.is_valid and v.countermodel.check()
    assert not decide_lg_inverse_free("x*y <= x^2 \\/ y^2").is_valid


@pytest.mark.parametrize(
    "s",
    [
        "y*x*y <= x*y*x",
        "z1*y1*z2 /\\ w1*y2*w2 <= z1*y2*z2 \\/ w1*y1*w2",
        "x*y <= y*x",
        "e <= x",
    ],
)
def test_strict_certificates(s):
    v = decide_lg_inverse_free(s)
    assert not v.is_valid
    m = v.countermodel
    assert m.kind == "aut-q" and m.check()
    assert Countermodel.from_json(m.to_json()).check()


def test_pair_with_itself_has_no_preorder():
    S = PairSet.of([(("x",), ("x",))])
    assert search_preorder(S) is None
    assert search_preorder(S, strict=True) is None


def test_rejects_inverses():
    with pytest.raises(ValueError):
        decide_dlm("e <= x^-1")


def test_budget_surfaces():
    with pytest.raises(BudgetExceeded):
        decide_dlm("x1*x2*x3 /\\ x4*x5*x6 /\\ x7*x8*x9 <= x1*x4*x7 \\/ x2*x5*x8 \\/ x3*x6*x9",
                   budget=Budget(max_nodes=2))


def test_json_stable():
    a = decide_dlm("x*y <= y*x").to_json()
    b = decide_dlm("x*y <= y*x").to_json()
    a.pop("seconds"), b.pop("seconds")
    assert a == b


def test_workers_do_not_change_verdicts():
    for s in corpus(25, seed=3):
        one = decide_dlm(s)
        two = decide_dlm(s, workers=2)
        assert one.is_valid == two.is_valid
        if not one.is_valid:
            assert one.countermodel == two.countermodel


def test_invalid_verdicts_come_with_checked_models():
    for s in corpus(150, seed=17):
        for v in (decide_dlm(s), decide_lg_inverse_free(s)):
            if not v.is_valid:
                assert v.countermodel.check()
                assert v.countermodel.falsifies(s)
