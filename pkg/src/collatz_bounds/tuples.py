"""Admissible-tuple algebra: the mod-3^b congruence, reconstruction, unique-v1 solver.

A chain of b Syracuse steps from an odd n down to 1 is encoded either as the
division-exponent vector v = (v_1, ..., v_b) or as the strictly decreasing
cumulative form u = (a = u_0 > u_1 > ... > u_b = 0) with v_i = u_{i-1} - u_i.
"""

from __future__ import annotations

from collections.abc import Sequence

from .arith import Mod3Context, dlog2


class NotAdmissible(ValueError):
    """The tuple does not encode an integer (the exact division fails)."""


def v_to_u(v: Sequence[int]) -> tuple[int, ...]:
    """Delta form to cumulative form: u_i = v_{i+1} + ... + v_b, u_0 = a."""
    if not v or any(x < 1 for x in v):
        raise ValueError("v entries must be positive")
    u = [0]
    for x in reversed(v):
        u.append(u[-1] + x)
    return tuple(reversed(u))


def u_to_v(u: Sequence[int]) -> tuple[int, ...]:
    """Cumulative form back to deltas; rejects non-decreasing input."""
    if len(u) < 2 or u[-1] != 0:
        raise ValueError("u must end at 0 and have at least two entries")
    if any(x <= y for x, y in zip(u, u[1:])):
        raise ValueError("u must be strictly decreasing")
    return tuple(x - y for x, y in zip(u, u[1:]))


def congruence_rhs(tail: Sequence[int], ctx: Mod3Context) -> int:
    """Right side of the admissibility congruence, which depends only on the tail.

    For a tuple (v_1, tail) with tail = (v_2, ..., v_b) this is
    sum_{i=1..b-1} 2^(t_i) * 3^(i-1) + 3^(b-1) mod 3^b, where t_i is the
    suffix sum v_{i+1} + ... + v_b.
    """
    b, mod = ctx.b, ctx.modulus
    if len(tail) != b - 1:
        raise ValueError(f"tail must have {b - 1} entries for b={b}, got {len(tail)}")
    rhs = pow(3, b - 1, mod)
    t = 0
    pw3 = 1
    # iterate i = b-1 down to 1; suffix sums build up from the tail end
    for i in range(b - 1, 0, -1):
        t += tail[i - 1]
        rhs += ctx.pow2_at(t) * pow(3, i - 1, mod)
    return rhs % mod


def is_admissible(v: Sequence[int], ctx: Mod3Context) -> bool:
    """Test the congruence 2^a = RHS(tail) (mod 3^b) for the full tuple."""
    if len(v) != ctx.b:
        raise ValueError(f"tuple length {len(v)} does not match context b={ctx.b}")
    if any(x < 1 for x in v):
        raise ValueError("v entries must be positive")
    a = sum(v)
    return pow(2, a, ctx.modulus) == congruence_rhs(v[1:], ctx)


def reconstruct_n(v: Sequence[int]) -> int:
    """The odd integer encoded by an admissible tuple.

    Cleared-denominator form of n = 2^a/3^b - sum_i 2^(u_i)/3^(b-i+1):
    a single exact division of 2^a - sum_i 2^(u_i)*3^(i-1) by 3^b.
    """
    u = v_to_u(v)
    b = len(v)
    a = u[0]
    num = 2**a - sum(2 ** u[i] * 3 ** (i - 1) for i in range(1, b + 1))
    den = 3**b
    q, r = divmod(num, den)
    if r != 0:
        raise NotAdmissible(f"tuple {tuple(v)} does not encode an integer")
    assert q > 0 and q % 2 == 1
    return q


def solve_v1(b: int, tail: Sequence[int], ctx: Mod3Context) -> int:
    """The unique v_1 in [4, m+2] making (v_1, *tail) admissible.

    2^(v_1 + a_1) must hit RHS(tail), so v_1 is a residue class mod m;
    the representative is placed in the length-m window starting at 4.
    """
    if ctx.b != b:
        raise ValueError(f"context b={ctx.b} does not match b={b}")
    if any(x < 1 for x in tail):
        raise ValueError("tail entries must be positive")
    a1 = sum(tail)
    k = dlog2(congruence_rhs(tail, ctx), ctx)
    v1 = (k - a1 - 4) % ctx.m + 4
    assert v1 <= ctx.m + 2, f"v1={v1} fell outside [4, m+2] for tail {tuple(tail)}"
    return v1
