"""Restricted integer-composition counting and its closed forms.

The central object is the extended binomial coefficient <b over a>_m: the
number of compositions of a into b parts each lying in [1, m] (note the
part range starts at 1, not 0).  All counts are exact Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import big_binomial

TABLE_CELL_CAP = 5_000_000


class C1Violated(ValueError):
    """Closed form requested outside the regime a <= m + b - 1."""


class ResourceCapExceeded(RuntimeError):
    """A requested table would exceed the configured size cap."""


@dataclass(frozen=True)
class CountTable:
    """Dense table of composition counts for b parts in [1, m], indexed by the sum a."""

    b: int
    m: int
    counts: tuple[int, ...]  # counts[a - a_min], a in [a_min, a_max]

    @property
    def a_min(self) -> int:
        return self.b

    @property
    def a_max(self) -> int:
        return self.m * self.b

    def count(self, a: int) -> int:
        if a < self.a_min or a > self.a_max:
            return 0
        return self.counts[a - self.a_min]

    def total(self) -> int:
        return sum(self.counts)


def _convolve_uniform(row: list[int], m: int) -> list[int]:
    """One convolution with the all-ones vector on [1, m], via a sliding window."""
    out = [0] * (len(row) + m - 1)
    window = 0
    for a in range(len(out)):
        if a < len(row):
            window += row[a]
        if a - m >= 0:
            window -= row[a - m]
        out[a] = window
    return out


def extended_binomial_table(b: int, m: int, cell_cap: int = TABLE_CELL_CAP) -> CountTable:
    """Exact table of <b over a>_m for all a, by repeated convolution."""
    if b < 1 or m < 1:
        raise ValueError("b and m must be >= 1")
    if m * b > cell_cap:
        raise ResourceCapExceeded(f"table size {m * b} exceeds cap {cell_cap}")
    row = [1] * m  # a in [1, m]
    for _ in range(b - 1):
        row = _convolve_uniform(row, m)
    return CountTable(b=b, m=m, counts=tuple(row))


def c1_holds(b: int, a: int, m: int) -> bool:
    return a <= m + b - 1


def closed_form_count(b: int, a: int, m: int) -> int:
    """<b over a>_m = binom(a-1, b-1) in the unconstrained regime C1."""
    if not c1_holds(b, a, m):
        raise C1Violated(f"a={a} > m+b-1={m + b - 1}")
    return big_binomial(a - 1, b - 1)


def cumulative_closed_form(b: int, a: int, m: int) -> int:
    """sum_{j=b..a} <b over j>_m = binom(a, b) under C1 (hockey-stick identity)."""
    if not c1_holds(b, a, m):
        raise C1Violated(f"a={a} > m+b-1={m + b - 1}")
    return big_binomial(a, b)


def admissible_v1_values(m: int) -> list[int]:
    """The residue window V for v_1: even values in [4, m+2] not divisible by 3."""
    return [v for v in range(4, m + 3) if v % 2 == 0 and v % 3 != 0]


@lru_cache(maxsize=32)
def _tail_table(parts: int, m: int) -> CountTable:
    return extended_binomial_table(parts, m)


def modified_coefficient(a: int, b: int, m: int) -> Fraction:
    """The V-initialized composition count C(a, b, m), as an exact rational.

    First part restricted to V with weight 3 (|V| = m/3 positions), the other
    b-1 parts uniform on [1, m]; normalized by m so that the sum over a is
    m^(b-1), the number of tuples with a free tail.
    """
    if b < 2:
        raise ValueError("b must be >= 2")
    if m != 2 * 3 ** (b - 1):
        raise ValueError(f"m must be 2*3^(b-1)={2 * 3 ** (b - 1)} for b={b}")
    tails = _tail_table(b - 1, m)
    acc = sum(tails.count(a - v) for v in admissible_v1_values(m))
    return Fraction(3 * acc, m)


def O1(b: int, a: int) -> float:
    """First approximation of the per-a count of length-b chains: C(a, b, m)."""
    m = 2 * 3 ** (b - 1)
    return float(modified_coefficient(a, b, m))


def O2(b: int, a: int) -> float:
    """Second approximation binom(a-5, b-1)/m, valid for b < a <= m+b-1 (the C1 range)."""
    m = 2 * 3 ** (b - 1)
    if not b < a <= m + b - 1:
        raise ValueError(f"a={a} outside the open domain ({b}, {m + b - 1})")
    return big_binomial(a - 5, b - 1) / m
