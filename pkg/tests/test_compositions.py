from fractions import Fraction

import pytest

from collatz_bounds.compositions import (C1Violated, O1, O2,
                                         ResourceCapExceeded,
                                         admissible_v1_values, c1_holds,
                                         closed_form_count,
                                         cumulative_closed_form,
                                         extended_binomial_table,
                                         modified_coefficient)
from oracles import brute_composition_counts


def test_table_examples():
    t = extended_binomial_table(2, 6)
    assert t.count(7) == 6
    assert t.count(2) == 1
    assert extended_binomial_table(4, 162).count(10) == 84


@pytest.mark.parametrize("b,m", [(1, 5), (2, 6), (3, 7), (4, 5), (5, 4)])
def test_table_matches_brute_force(b, m):
    t = extended_binomial_table(b, m)
    brute = brute_composition_counts(b, m)
    for a in range(t.a_min - 1, t.a_max + 2):
        assert t.count(a) == brute.get(a, 0)


@pytest.mark.parametrize("b,m", [(2, 6), (3, 10), (5, 12), (4, 162), (6, 31)])
def test_table_invariants(b, m):
    t = extended_binomial_table(b, m)
    assert t.total() == m**b
    counts = t.counts
    assert counts == counts[::-1]  # symmetry about b(m+1)/2
    mean_num = sum(a * c for a, c in zip(range(t.a_min, t.a_max + 1), counts))
    assert mean_num * 2 == m**b * b * (m + 1)
    second = sum(a * a * c for a, c in zip(range(t.a_min, t.a_max + 1), counts))
    var = Fraction(second, m**b) - Fraction(b * (m + 1), 2) ** 2
    assert var == Fraction(b * (m * m - 1), 12)


def test_table_resource_guard():
    with pytest.raises(ResourceCapExceeded):
        extended_binomial_table(1000, 100_000)


def test_c1_boundary():
    assert c1_holds(4, 10, 162)
    assert c1_holds(4, 165, 162)
    assert not c1_holds(4, 166, 162)


def test_closed_forms():
    assert closed_form_count(4, 10, 162) == 84
    assert closed_form_count(2, 7, 6) == 6
    assert closed_form_count(3, 3, 9) == 1
    assert cumulative_closed_form(2, 7, 6) == 21
    assert cumulative_closed_form(4, 54, 162) == 316251
    assert cumulative_closed_form(5, 5, 20) == 1
    with pytest.raises(C1Violated):
        closed_form_count(4, 166, 162)
    with pytest.raises(C1Violated):
        cumulative_closed_form(4, 166, 162)


@pytest.mark.parametrize("b,m", [(2, 6), (3, 18), (4, 54), (6, 200)])
def test_closed_form_matches_table_on_c1_range(b, m):
    t = extended_binomial_table(b, m)
    for a in range(b, m + b):
        assert t.count(a) == closed_form_count(b, a, m)
    run = 0
    for a in range(b, m + b):
        run += t.count(a)
        assert run == cumulative_closed_form(b, a, m)


@pytest.mark.parametrize("b", [2, 3, 4, 5, 6])
def test_v_window_size(b):
    m = 2 * 3 ** (b - 1)
    v = admissible_v1_values(m)
    assert len(v) == m // 3
    assert all(x % 2 == 0 and x % 3 != 0 and 4 <= x <= m + 2 for x in v)


def test_modified_coefficient_examples():
    assert modified_coefficient(6, 2, 6) == Fraction(1, 2)
    assert sum(modified_coefficient(a, 2, 6) for a in range(2, 15)) == 6
    for a in range(0, 5):
        assert modified_coefficient(a, 3, 18) == 0
    with pytest.raises(ValueError):
        modified_coefficient(6, 2, 8)


@pytest.mark.parametrize("b", [2, 3, 4])
def test_modified_coefficient_normalization(b):
    m = 2 * 3 ** (b - 1)
    total = sum(modified_coefficient(a, b, m) for a in range(0, m * b + 3))
    assert total == m ** (b - 1)


def test_o1_o2_examples():
    assert O2(2, 7) == pytest.approx(1 / 3)
    assert O1(2, 6) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        O2(1, 5)


@pytest.mark.parametrize("b", [3, 4])
def test_o2_below_o1_on_shared_domain(b):
    m = 2 * 3 ** (b - 1)
    for a in range(b + 1, m + b):
        assert O2(b, a) <= O1(b, a) + 1e-12


@pytest.mark.parametrize("b", [3, 4, 5, 6])
def test_lower_bound_chain(b):
    from math import comb
    m = 2 * 3 ** (b - 1)
    v_set = admissible_v1_values(m)

    def cb(n, k):
        return comb(n, k) if 0 <= k <= n else 0

    for a in range(b + 4, m + b, max(1, m // 7)):
        assert 3 * sum(cb(a - v, b - 1) for v in v_set) > cb(a - 4, b)
