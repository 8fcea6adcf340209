"""Seeded random statements shared by the property and acceptance tests."""

import random

from dlm.terms import E, Statement, Var, join, meet, product


def random_word(rng, letters, max_len=3):
    n = rng.randint(0, max_len)
    if n == 0:
        return E
    return product(*(Var(rng.choice(letters)) for _ in range(n)))


def random_side(rng, letters, max_len=3, max_parts=2):
    parts = [random_word(rng, letters, max_len) for _ in range(rng.randint(1, max_parts))]
    combine = meet if rng.random() < 0.5 else join
    return combine(*parts)


def random_statement(rng, n_vars=3, max_len=3, max_parts=2, eq_rate=0.15):
    letters = ["x", "y", "z"][: rng.randint(1, n_vars)]
    kind = "eq" if rng.random() < eq_rate else "leq"
    return Statement(
        kind,
        random_side(rng, letters, max_len, max_parts),
        random_side(rng, letters, max_len, max_parts),
    )


def corpus(n, seed, **kw):
    rng = random.Random(seed)
    return [random_statement(rng, **kw) for _ in range(n)]
