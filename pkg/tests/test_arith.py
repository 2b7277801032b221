import math
import random

import pytest

from collatz_bounds.arith import (NotAPowerResidue, big_binomial, build_context,
                                  dlog2, real_binomial)


def test_build_context_small_examples():
    c1 = build_context(1)
    assert (c1.modulus, c1.m, c1.pow2) == (3, 2, (1, 2))
    c2 = build_context(2)
    assert (c2.modulus, c2.m) == (9, 6)
    assert c2.pow2 == (1, 2, 4, 8, 7, 5)
    c5 = build_context(5)
    assert (c5.modulus, c5.m) == (243, 162)


def test_build_context_rejects_b_zero():
    with pytest.raises(ValueError):
        build_context(0)


@pytest.mark.parametrize("b", range(1, 13))
def test_dlog_full_round_trip(b):
    ctx = build_context(b)
    assert ctx.pow2[0] == 1
    assert len(set(ctx.pow2)) == ctx.m
    for k, r in enumerate(ctx.pow2):
        assert dlog2(r, ctx) == k


def test_pow2_group_law():
    ctx = build_context(6)
    rng = random.Random(7)
    for _ in range(200):
        j, k = rng.randrange(ctx.m), rng.randrange(ctx.m)
        assert ctx.pow2[(j + k) % ctx.m] == ctx.pow2[j] * ctx.pow2[k] % ctx.modulus


@pytest.mark.parametrize("b", [1, 2, 3, 4, 6, 8])
def test_two_has_order_m(b):
    ctx = build_context(b)
    assert ctx.pow2[ctx.m - 1] * 2 % ctx.modulus == 1
    assert all(ctx.pow2[k] != 1 for k in range(1, ctx.m))


def test_dlog_examples():
    c2 = build_context(2)
    assert dlog2(5, c2) == 5
    assert dlog2(1, c2) == 0
    assert dlog2(1, build_context(7)) == 0
    with pytest.raises(NotAPowerResidue):
        dlog2(3, c2)


@pytest.mark.parametrize("b", [13, 20, 50, 200])
def test_dlog_lifted_round_trip(b):
    ctx = build_context(b)
    assert ctx.pow2 is None
    rng = random.Random(b)
    for k in [0, 1, ctx.m - 1] + [rng.randrange(ctx.m) for _ in range(20)]:
        assert dlog2(pow(2, k, ctx.modulus), ctx) == k


def test_dlog_modes_agree_at_threshold():
    lifted = build_context(13)
    table = build_context(13, table_threshold=14)
    rng = random.Random(13)
    for _ in range(50):
        y = pow(2, rng.randrange(table.m), table.modulus)
        assert dlog2(y, lifted) == dlog2(y, table)


def test_real_binomial_examples():
    assert real_binomial(4.0, 2) == 6.0
    assert real_binomial(2.5, 2) == pytest.approx(1.875)
    assert real_binomial(-3.7, 0) == 1.0
    with pytest.raises(ValueError):
        real_binomial(1.0, -1)


def test_real_binomial_matches_exact():
    rng = random.Random(11)
    cases = [(1000, 500), (1000, 3), (17, 17), (0, 0)]
    for _ in range(100):
        r = rng.randrange(1001)
        k = rng.randrange(r + 1)
        cases.append((r, k))
    for r, k in cases:
        exact = big_binomial(r, k)
        assert real_binomial(float(r), k) == pytest.approx(exact, rel=1e-12)


def test_big_binomial_examples():
    assert big_binomial(54, 4) == 316251
    assert big_binomial(7, 2) == 21
    assert big_binomial(3, 5) == 0
    assert big_binomial(54, 4) == 5856.5 * 54
