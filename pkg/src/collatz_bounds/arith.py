"""Exact arithmetic primitives: powers of 2 modulo 3^b, discrete logs, binomials."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

# Above this chain length the full lookup table (size m = 2*3^(b-1)) is not
# built; discrete logs fall back to digit-by-digit lifting instead.
DLOG_TABLE_THRESHOLD = 13


class NotAPowerResidue(ValueError):
    """Raised when asked for the discrete log of a residue divisible by 3."""


@dataclass(frozen=True)
class Mod3Context:
    """Precomputed arithmetic context for the modulus 3^b.

    2 generates a cyclic group of order m = 2*3^(b-1) modulo 3^b; `pow2`
    tabulates it and `dlog` inverts it.  Both are None in lifted mode
    (b >= DLOG_TABLE_THRESHOLD), where logs are computed on demand.
    """

    b: int
    modulus: int
    m: int
    pow2: tuple[int, ...] | None = field(repr=False)
    dlog: dict[int, int] | None = field(repr=False)

    def pow2_at(self, k: int) -> int:
        """2^k mod 3^b, for any integer k."""
        k %= self.m
        if self.pow2 is not None:
            return self.pow2[k]
        return pow(2, k, self.modulus)


def build_context(b: int, table_threshold: int = DLOG_TABLE_THRESHOLD) -> Mod3Context:
    if b < 1:
        raise ValueError(f"chain length b must be >= 1, got {b}")
    modulus = 3**b
    m = 2 * 3 ** (b - 1)
    if b < table_threshold:
        pow2 = [1] * m
        for k in range(1, m):
            pow2[k] = pow2[k - 1] * 2 % modulus
        dlog = {r: k for k, r in enumerate(pow2)}
        return Mod3Context(b=b, modulus=modulus, m=m, pow2=tuple(pow2), dlog=dlog)
    return Mod3Context(b=b, modulus=modulus, m=m, pow2=None, dlog=None)


def dlog2(y: int, ctx: Mod3Context) -> int:
    """The unique k in [0, m) with 2^k = y (mod 3^b)."""
    y %= ctx.modulus
    if y % 3 == 0:
        raise NotAPowerResidue(f"{y} is divisible by 3 (mod {ctx.modulus})")
    if ctx.dlog is not None:
        return ctx.dlog[y]
    return _dlog2_lifted(y, ctx)


def _dlog2_lifted(y: int, ctx: Mod3Context) -> int:
    """Discrete log by lifting base-3 digits, one modulus 3^j at a time.

    Writes k = e + 2s with e the parity bit (read off mod 3, since 2 = -1
    there) and s the base-3 expansion solving 4^s = y * 2^(-e) (mod 3^b);
    4 has order 3^(b-1), and each digit is exposed by raising to 3^(b-2-i),
    which lands in the order-3 subgroup generated by zeta = 4^(3^(b-2)).
    """
    b, mod = ctx.b, ctx.modulus
    e = 0 if y % 3 == 1 else 1
    if b == 1:
        return e
    z = y * pow(2, -e, mod) % mod
    zeta = pow(4, 3 ** (b - 2), mod)
    digit_of = {1: 0, zeta: 1, zeta * zeta % mod: 2}
    inv4 = pow(4, -1, mod)
    s = 0
    for i in range(b - 1):
        probe = pow(z * pow(inv4, s, mod) % mod, 3 ** (b - 2 - i), mod)
        s += digit_of[probe] * 3**i
    k = e + 2 * s
    assert pow(2, k, mod) == y
    return k


@lru_cache(maxsize=64)
def context(b: int) -> Mod3Context:
    """Shared cached context (contexts are immutable, safe to reuse)."""
    return build_context(b)


def real_binomial(r: float, k: int) -> float:
    """Generalized binomial coefficient binom(r, k) with real upper index.

    Running product prod_{i<k} (r-i)/(i+1); exact for integer r >= k.
    """
    if k < 0:
        raise ValueError("lower index must be nonnegative")
    out = 1.0
    for i in range(k):
        out *= (r - i) / (i + 1)
    return out


def big_binomial(n: int, k: int) -> int:
    """Exact binom(n, k), with binom(n, k) = 0 whenever k > n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
