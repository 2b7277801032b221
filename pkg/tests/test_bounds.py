import math

import pytest

from collatz_bounds import bounds as bnd


def test_constants():
    assert bnd.CONSTANTS.t == pytest.approx(math.log2(3))
    assert abs(bnd.COEFFICIENT2 - 0.45177) < 5e-6
    assert abs(bnd.COEFFICIENT3 - 0.3388) < 5e-5
    assert 1 / bnd.C == pytest.approx(2.409421, abs=1e-6)
    assert (5 * bnd.T - 8) / bnd.C**2 == pytest.approx(-0.436487, abs=1e-6)
    assert 2 / bnd.C**3 == pytest.approx(27.9749, abs=1e-3)
    assert (2 * bnd.T**2 + 8 * bnd.T - 16) / bnd.C**4 == pytest.approx(57.4246, abs=1e-3)


def test_a_of_x():
    assert bnd.a_of_x(8, 0) == pytest.approx(3.0)
    assert bnd.a_of_x(2e10, 0) == pytest.approx(34.2193, abs=1e-4)
    assert bnd.a_of_x(2, 1) == pytest.approx(1 + math.log2(3))
    with pytest.raises(ValueError):
        bnd.a_of_x(1.0, 0)


def test_m2_term_values():
    total = sum(bnd.m2_term(b, 2e10) for b in range(1, 6))
    assert total == pytest.approx(4793, abs=1)
    assert bnd.m3_term(1, 2e10) == 1.5
    # below x=16 the b=1 upper index goes negative and the term is clamped
    assert bnd.m2_term(1, 2.5) == 0.0


def test_closed_forms():
    x = 2e10
    assert bnd.m2_closed(x) == pytest.approx(0.45177 * x - 0.5, rel=1e-5)
    assert bnd.m3_closed(1) == pytest.approx(0.33883, abs=1e-4)
    assert bnd.m2_closed(0) == -0.5
    for x in (10.0, 1e4, 1e12):
        assert bnd.m3_closed(x) < bnd.m2_closed(x)


@pytest.mark.parametrize("l", [0.0, 5.0, 10.0, 20.0, 34.2193])
def test_series_identity(l):
    assert bnd.series_sum(l) == pytest.approx(2 * 2**l / bnd.C, rel=1e-8)


def test_series_consistency_with_closed_forms():
    for x in (2**10, 2**20, 2e10):
        l = math.log2(x)
        assert bnd.m2_closed(x) == pytest.approx(1.5 * bnd.series_sum(l, -4.0) - 0.5, rel=1e-8)
        assert bnd.m3_closed(x) == pytest.approx(1.5 * bnd.series_sum(l, bnd.T - 6.0), rel=1e-8)


def test_series_guards(monkeypatch):
    with pytest.raises(ValueError):
        bnd.series_sum(5.0, tol=0.0)
    monkeypatch.setattr(bnd, "SERIES_B_CAP", 10)
    with pytest.raises(bnd.NonConvergence):
        bnd.series_sum(30.0)


def test_bt_identity_roots():
    assert abs(bnd.bt_identity_residual(2.0)) < 1e-12
    assert abs(bnd.bt_identity_residual(4.0)) < 1e-12
    assert bnd.bt_identity_residual(1.0) == pytest.approx(-1 / 3)


@pytest.mark.parametrize("lx", [10, 30, 60])
def test_b_distribution_moments(lx):
    x = 2.0**lx
    d = bnd.b_distribution(x)
    assert sum(d.probs) == pytest.approx(1.0, abs=1e-9)
    assert all(p >= 0 for p in d.probs)
    assert d.b_max >= bnd.mean_closed(x) + 12 * math.sqrt(bnd.var_closed(x))
    if lx >= 30:
        assert d.mean() == pytest.approx(bnd.mean_closed(x), rel=1e-3)
        assert d.variance() == pytest.approx(bnd.var_closed(x), rel=1e-3)


def test_b_distribution_guard():
    with pytest.raises(ValueError):
        bnd.b_distribution(1000.0)


def test_mean_var_examples():
    assert bnd.mean_closed(2**30) == pytest.approx(71.846, abs=1e-3)
    assert bnd.var_closed(2**30) == pytest.approx(896.67, abs=0.05)


def test_normality_decay():
    skews, kurts = [], []
    for lx in (10, 20, 40, 80, 200):
        s, k = bnd.normality_diagnostic(2.0**lx)
        skews.append(abs(s))
        kurts.append(abs(k))
    assert skews == sorted(skews, reverse=True)
    assert kurts == sorted(kurts, reverse=True)
    # slow sqrt-rate convergence: still visibly skewed at 2^200
    assert skews[-1] == pytest.approx(0.3706, abs=5e-3)


def test_m2_truncated():
    x = 2.0**100
    ratio = bnd.m2_truncated(x) / bnd.m2_closed(x)
    assert ratio == pytest.approx(0.954, abs=0.01)
    assert ratio < 1.0
    with pytest.raises(ValueError):
        bnd.m2_truncated(512.0)


def test_b_min_threshold():
    assert bnd.b_min_threshold(2e10) == pytest.approx(4.53, abs=0.01)
    assert bnd.b_min_threshold(2.0**math.e) == pytest.approx(2.0)
    assert bnd.b_min_threshold(4.0) == pytest.approx(math.log(2) + 1)
    with pytest.raises(ValueError):
        bnd.b_min_threshold(2.0)
