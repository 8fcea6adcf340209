import itertools

import numpy as np
import pytest

from dlm.models import ChainEndo, eval_in_end
from dlm.oracle import (
    OracleBudgetExceeded,
    OrderedMonoid,
    endomorphism_count,
    enumerate_endomorphisms,
    enumerate_ordered_monoids,
    holds_in_ordered_monoid,
    one_sided_inverses_are_two_sided,
    oracle_dlm_validity,
    right_cancellativity_witness,
)
from dlm.terms import parse_statement

# frozen after the first exhaustive run; cross-checked below by brute force
ORDERED_MONOID_COUNTS = {1: 1, 2: 2, 3: 8, 4: 34}


def test_endomorphism_listing():
    assert [f.map for f in enumerate_endomorphisms(2)] == [(0, 0), (0, 1), (1, 1)]
    assert [len(enumerate_endomorphisms(n)) for n in range(1, 5)] == [1, 3, 10, 35]
    assert all(endomorphism_count(n) == len(enumerate_endomorphisms(n)) for n in range(1, 6))


def test_oracle_example():
    r = oracle_dlm_validity("y*x*y <= x*y*x", 2)
    assert not r.is_valid
    assert r.assignment == {"x": ChainEndo((0, 0)), "y": ChainEndo((1, 1))}
    s = parse_statement("y*x*y <= x*y*x")
    # the witness fails at both points of the chain
    for p in (0, 1):
        assert eval_in_end(r.assignment, s.lhs, p) > eval_in_end(r.assignment, s.rhs, p)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_trivial_valid(n):
    assert oracle_dlm_validity("x <= x", n).is_valid


def test_square_inequality_needs_three_points():
    assert oracle_dlm_validity("x*y <= x^2 \\/ y^2", 2).is_valid
    r = oracle_dlm_validity("x*y <= x^2 \\/ y^2", 3)
    assert not r.is_valid
    s = parse_statement("x*y <= x^2 \\/ y^2")
    assert eval_in_end(r.assignment, s.lhs, r.point) > eval_in_end(r.assignment, s.rhs, r.point)


def test_oracle_matches_naive_loop():
    s = parse_statement("x*y /\\ y <= y*x \\/ x")
    maps = enumerate_endomorphisms(3)
    naive = all(
        eval_in_end({"x": f, "y": g}, s.lhs, p) <= eval_in_end({"x": f, "y": g}, s.rhs, p)
        for f, g in itertools.product(maps, repeat=2)
        for p in range(3)
    )
    assert oracle_dlm_validity(s, 3).is_valid == naive


def test_oracle_budget():
    with pytest.raises(OracleBudgetExceeded):
        oracle_dlm_validity("x*y*z <= z", 4, max_assignments=100)


def test_quasiequation_and_cancellativity():
    assert all(one_sided_inverses_are_two_sided(n) for n in range(1, 5))
    f, g, h = right_cancellativity_witness(2)
    assert f != g and f.then(h) == g.then(h)


def test_small_ordered_monoids():
    assert enumerate_ordered_monoids(1) == [OrderedMonoid(((0,),), 0)]
    two = enumerate_ordered_monoids(2)
    assert {(m.unit, m.table) for m in two} == {(1, ((0, 0), (0, 1))), (0, ((0, 1), (1, 1)))}


def _brute_ordered_monoid_count(n):
    """Vectorized over every table with the unit row and column fixed."""
    total = 0
    free = [(a, b) for a in range(n) for b in range(n)]
    for u in range(n):
        cells = [(a, b) for a, b in free if a != u and b != u]
        vals = np.array(list(itertools.product(range(n), repeat=len(cells))), dtype=np.int64)
        N = len(vals)
        T = np.empty((N, n, n), dtype=np.int64)
        T[:, u, :] = np.arange(n)
        T[:, :, u] = np.arange(n)
        for k, (a, b) in enumerate(cells):
            T[:, a, b] = vals[:, k]
        ok = np.all(np.diff(T, axis=1) >= 0, axis=(1, 2)) & np.all(np.diff(T, axis=2) >= 0, axis=(1, 2))
        rows = np.arange(N)
        for a, b, c in itertools.product(range(n), repeat=3):
            ok &= T[rows, T[:, a, b], c] == T[rows, a, T[:, b, c]]
        total += int(ok.sum())
    return total


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ordered_monoid_counts(n):
    ms = enumerate_ordered_monoids(n)
    assert len(ms) == ORDERED_MONOID_COUNTS[n]
    assert len({(m.unit, m.table) for m in ms}) == len(ms)
    assert all(m.check() for m in ms)
    assert _brute_ordered_monoid_count(n) == ORDERED_MONOID_COUNTS[n]


def test_ordered_monoid_budget():
    with pytest.raises(OracleBudgetExceeded):
        enumerate_ordered_monoids(3, max_nodes=5)


def test_holds_in_ordered_monoid():
    m = OrderedMonoid(((0, 0), (0, 1)), 1)
    assert holds_in_ordered_monoid("x*y <= x", m).is_valid
    r = holds_in_ordered_monoid("x <= x*x", OrderedMonoid(((0, 1), (1, 1)), 0))
    assert r.is_valid
    r = holds_in_ordered_monoid("x*x <= x /\\ e", OrderedMonoid(((0, 1), (1, 1)), 0))
    assert not r.is_valid and r.assignment == {"x": 1}
