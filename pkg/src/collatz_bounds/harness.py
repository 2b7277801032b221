"""Desk-scale experiments: chain enumeration, joint tables, sweeps, CSV reports.

The enumeration of all m^(b-1) tails is done by dynamic programming over the
pair (tail sum, congruence right-hand side mod 3^b) instead of visiting the
tails one by one: every tail with the same state solves to the same v_1, so
the joint counts N_b(v_1, a_1) come out exactly, in seconds even for b = 5.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bounds as bnd
from .arith import Mod3Context, context, dlog2
from .compositions import ResourceCapExceeded, admissible_v1_values, modified_coefficient, O2
from .dynamics import trajectory
from .tuples import reconstruct_n, solve_v1

ENUMERATION_B_CAP = 6
SWEEP_DEFAULT_CAP = 10**8


@dataclass(frozen=True)
class JointTable:
    """Exact counts N_b(v_1, a_1) of tails summing to a_1 that solve to v_1."""

    b: int
    m: int
    v_values: tuple[int, ...]  # the window V, ascending
    a1_min: int
    a1_max: int
    cells: np.ndarray = field(repr=False)  # shape (len(v_values), a1 span), int64

    def row_sums(self) -> np.ndarray:
        return self.cells.sum(axis=1)

    def column_sums(self) -> np.ndarray:
        return self.cells.sum(axis=0)

    def total(self) -> int:
        return int(self.cells.sum())


@dataclass(frozen=True)
class EnumerationResult:
    b: int
    m: int
    cardinality: int
    a_min: int
    a_counts: tuple[int, ...]  # histogram of a = v_1 + a_1
    joint: JointTable

    def a_histogram(self) -> dict[int, int]:
        return {self.a_min + i: c for i, c in enumerate(self.a_counts) if c}


def _dp_stage(state: np.ndarray, t_lo: int, m: int, mod: int,
              pow2: np.ndarray, vals: range) -> np.ndarray:
    """Add one tail part ranging over `vals` to the (suffix sum, residue) state.

    state[t - t_lo, p] counts partial tails with suffix sum t and partial
    residue p, where p carries sum_i 2^(t_i) 3^(i-k); the new part v maps
    (t, p) -> (t + v, 2^(t+v) + 3p mod 3^b).
    """
    n_t = state.shape[0]
    new_lo = t_lo + vals.start
    span = n_t + (vals.stop - 1 - vals.start)
    summed = np.zeros((span, mod), dtype=np.int64)
    for v in vals:
        off = v - vals.start
        summed[off:off + n_t] += state
    out = np.zeros_like(summed)
    p = np.arange(mod, dtype=np.int64)
    three_p = (3 * p) % mod
    t_idx = (np.arange(span, dtype=np.int64) + new_lo) % m
    targets = (pow2[t_idx][:, None] + three_p[None, :]) % mod
    rows = np.repeat(np.arange(span), mod)
    np.add.at(out, (rows, targets.ravel()), summed.ravel())
    return out


def _dp_counts(b: int, ctx: Mod3Context, v2_vals: range) -> np.ndarray:
    """State table over (a_1, RHS residue) for tails with v_2 restricted to v2_vals."""
    m, mod = ctx.m, ctx.modulus
    pow2 = np.array(ctx.pow2, dtype=np.int64)
    parts = b - 1
    full = range(1, m + 1)
    # innermost part v_b first; v_2 is added last so workers can split on it
    ranges = [full] * (parts - 1) + [v2_vals]
    first = ranges[0]
    state = np.zeros((first.stop - first.start, mod), dtype=np.int64)
    for v in first:
        state[v - first.start, pow2[v % m]] += 1
    t_lo = first.start
    for vals in ranges[1:]:
        state = _dp_stage(state, t_lo, m, mod, pow2, vals)
        t_lo += vals.start
    return state


def _dp_chunk(args: tuple[int, int, int]) -> tuple[np.ndarray, np.ndarray]:
    """Worker body: joint cells and a-histogram for one v_2 sub-range."""
    b, v2_start, v2_stop = args
    ctx = context(b)
    m, mod = ctx.m, ctx.modulus
    state = _dp_counts(b, ctx, range(v2_start, v2_stop))
    v_values = admissible_v1_values(m)
    v_index = np.full(m + 3, -1, dtype=np.int64)
    for i, v in enumerate(v_values):
        v_index[v] = i
    dlog = np.full(mod, -1, dtype=np.int64)
    for r in range(mod):
        if r % 3:
            dlog[r] = dlog2(r, ctx)
    three_b1 = 3 ** (b - 1) % mod
    parts = b - 1
    a1_lo, a1_hi = parts, m * parts
    rhs = (three_b1 + np.arange(mod, dtype=np.int64)) % mod
    k_of_p = dlog[rhs]  # -1 on non-units (which carry zero counts)
    # row 0 of the chunk state is suffix sum (parts - 1) + v2_start
    a1 = np.arange(state.shape[0], dtype=np.int64) + (parts - 1) + v2_start
    v1 = (k_of_p[None, :] - a1[:, None] - 4) % m + 4
    joint = np.zeros((len(v_values), a1_hi - a1_lo + 1), dtype=np.int64)
    nz_a, nz_p = np.nonzero(state)
    v1_nz = v1[nz_a, nz_p]
    rows = v_index[v1_nz]
    assert (rows >= 0).all(), "a solved v_1 fell outside the window V"
    np.add.at(joint, (rows, a1[nz_a] - a1_lo), state[nz_a, nz_p])
    # histogram of a = v_1 + a_1
    a_min = a1_lo + v_values[0]
    a_max = a1_hi + v_values[-1]
    hist = np.zeros(a_max - a_min + 1, dtype=np.int64)
    a_tot = v1_nz + a1[nz_a]
    np.add.at(hist, a_tot - a_min, state[nz_a, nz_p])
    return joint, hist


def _chunk_ranges(m: int, workers: int) -> list[tuple[int, int]]:
    edges = np.linspace(1, m + 1, workers + 1).astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(edges, edges[1:]) if lo < hi]


def enumerate_gbstar(b: int, workers: int = 1, b_cap: int = ENUMERATION_B_CAP) -> EnumerationResult:
    """Exact a-histogram and joint table over all m^(b-1) tails of length b.

    Work splits on the v_2 digit into disjoint ranges; partial tables merge
    by addition, so the result is identical for any worker count.
    """
    if b < 2:
        raise ValueError("b must be >= 2")
    if b > b_cap:
        raise ResourceCapExceeded(f"b={b} exceeds the enumeration cap {b_cap}")
    ctx = context(b)
    m = ctx.m
    tasks = [(b, lo, hi) for lo, hi in _chunk_ranges(m, workers)]
    if workers <= 1:
        parts = [_dp_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_dp_chunk, tasks))
    joint = sum(p[0] for p in parts)
    hist = sum(p[1] for p in parts)
    v_values = tuple(admissible_v1_values(m))
    a1_lo, a1_hi = b - 1, m * (b - 1)
    table = JointTable(b=b, m=m, v_values=v_values, a1_min=a1_lo, a1_max=a1_hi, cells=joint)
    cardinality = m ** (b - 1)
    assert table.total() == cardinality
    return EnumerationResult(
        b=b, m=m, cardinality=cardinality,
        a_min=a1_lo + v_values[0], a_counts=tuple(int(c) for c in hist), joint=table,
    )


def enumerate_gbstar_direct(b: int) -> EnumerationResult:
    """Tail-by-tail reference enumeration (oracle for the DP; keep b small)."""
    if b < 2:
        raise ValueError("b must be >= 2")
    ctx = context(b)
    m = ctx.m
    v_values = tuple(admissible_v1_values(m))
    v_index = {v: i for i, v in enumerate(v_values)}
    a1_lo, a1_hi = b - 1, m * (b - 1)
    a_min = a1_lo + v_values[0]
    joint = np.zeros((len(v_values), a1_hi - a1_lo + 1), dtype=np.int64)
    hist = np.zeros(a1_hi + v_values[-1] - a_min + 1, dtype=np.int64)
    for tail in itertools.product(range(1, m + 1), repeat=b - 1):
        v1 = solve_v1(b, tail, ctx)
        a1 = sum(tail)
        joint[v_index[v1], a1 - a1_lo] += 1
        hist[v1 + a1 - a_min] += 1
    table = JointTable(b=b, m=m, v_values=v_values, a1_min=a1_lo, a1_max=a1_hi, cells=joint)
    return EnumerationResult(
        b=b, m=m, cardinality=m ** (b - 1),
        a_min=a_min, a_counts=tuple(int(c) for c in hist), joint=table,
    )


def alpha_table(joint: JointTable) -> np.ndarray:
    """Ratios alpha_b(v, a_1) of each cell to its column mean; NaN where the column is empty."""
    col = joint.column_sums().astype(np.float64)
    n_v = len(joint.v_values)
    with np.errstate(divide="ignore", invalid="ignore"):
        alpha = joint.cells.astype(np.float64) * n_v / col[None, :]
    alpha[:, col == 0] = np.nan
    return alpha


@dataclass(frozen=True)
class V1MarginalStats:
    b: int
    a1_max: int
    totals: dict[int, int]  # v -> sum of N_b(v, a_1) over a_1 <= a1_max
    minimum: int
    maximum: int
    mean: Fraction
    sd_population: float
    sd_sample: float
    clusters: tuple[tuple[int, tuple[int, ...]], ...]  # (total, members) by total


def v1_marginal_stats(joint: JointTable, a1_max: int) -> V1MarginalStats:
    """Per-v_1 totals restricted to a_1 <= a1_max, with their cluster structure."""
    hi = min(a1_max, joint.a1_max)
    sub = joint.cells[:, : hi - joint.a1_min + 1]
    totals = {v: int(s) for v, s in zip(joint.v_values, sub.sum(axis=1))}
    vals = list(totals.values())
    n = len(vals)
    mean = Fraction(sum(vals), n)
    var_pop = sum((Fraction(x) - mean) ** 2 for x in vals) / n
    sd_pop = math.sqrt(float(var_pop))
    sd_samp = math.sqrt(float(var_pop) * n / (n - 1)) if n > 1 else 0.0
    groups: dict[int, list[int]] = {}
    for v, s in totals.items():
        groups.setdefault(s, []).append(v)
    clusters = tuple(sorted((s, tuple(sorted(vs))) for s, vs in groups.items()))
    return V1MarginalStats(
        b=joint.b, a1_max=a1_max, totals=totals,
        minimum=min(vals), maximum=max(vals), mean=mean,
        sd_population=sd_pop, sd_sample=sd_samp, clusters=clusters,
    )


@dataclass(frozen=True)
class OComparison:
    """Per-a comparison of the exact count O with the approximations O1 and O2."""

    b: int
    m: int
    a: tuple[int, ...]
    o: tuple[int, ...]
    o1: tuple[Fraction, ...]
    o2: tuple[float | None, ...]


def compare_o(enum: EnumerationResult) -> OComparison:
    b, m = enum.b, enum.m
    a_lo, a_hi = b, m * b + 2
    hist = enum.a_histogram()
    a_vals, o_vals, o1_vals, o2_vals = [], [], [], []
    for a in range(a_lo, a_hi + 1):
        a_vals.append(a)
        o_vals.append(hist.get(a, 0))
        o1_vals.append(modified_coefficient(a, b, m))
        o2_vals.append(O2(b, a) if b < a <= m + b - 1 else None)
    total_o = sum(o_vals)
    total_o1 = sum(o1_vals)
    assert total_o == m ** (b - 1)
    assert total_o1 == m ** (b - 1)
    return OComparison(b=b, m=m, a=tuple(a_vals), o=tuple(o_vals),
                       o1=tuple(o1_vals), o2=tuple(o2_vals))


@dataclass(frozen=True)
class SweepResult:
    """Per-b census of odd starts below x, against the per-b closed-form terms."""

    x: int
    counts: tuple[int, ...]  # counts[b] = N(b, x), from b = 0
    m2_terms: tuple[float, ...]

    @property
    def b_max(self) -> int:
        return len(self.counts) - 1

    def cumulative_counts(self) -> list[int]:
        return list(itertools.accumulate(self.counts))

    def cumulative_m2(self) -> list[float]:
        return list(itertools.accumulate(self.m2_terms))

    def dominance_violations(self) -> list[int]:
        return [b for b, (cm, cn) in
                enumerate(zip(self.cumulative_m2(), self.cumulative_counts())) if cm > cn]


def _sweep_chunk(args: tuple[int, int, int]) -> np.ndarray:
    lo, hi, max_steps = args
    counts = np.zeros(1024, dtype=np.int64)
    for n in range(lo, hi, 2):
        b = 0
        v = n
        while v != 1:
            w = 3 * v + 1
            v = w >> ((w & -w).bit_length() - 1)
            b += 1
            if b > max_steps:
                raise _budget_error(n, max_steps)
        if b >= len(counts):
            counts = np.concatenate([counts, np.zeros(b + 1 - len(counts), dtype=np.int64)])
        counts[b] += 1
    return counts


def _budget_error(n: int, max_steps: int):
    from .dynamics import StepBudgetExceeded
    return StepBudgetExceeded(f"orbit of {n} exceeded {max_steps} Syracuse steps")


def _sweep_memo(x: int, max_steps: int) -> np.ndarray:
    """Single-pass census with an in-range cache of b(n), ascending n.

    Each chain is followed only until it drops below its start, whose b is
    already known; odd values met on the way are backfilled when in range.
    """
    size = x // 2  # index i <-> odd n = 2i + 1, covering the odd n < x
    bs = np.full(size, -1, dtype=np.int32)
    bs[0] = 0
    for i in range(1, size):
        if bs[i] >= 0:
            continue
        n = 2 * i + 1
        path = []
        v = n
        while v >= n:
            path.append(v)
            if len(path) > max_steps:
                raise _budget_error(n, max_steps)
            w = 3 * v + 1
            v = w >> ((w & -w).bit_length() - 1)
        base = int(bs[(v - 1) >> 1])
        assert base >= 0
        k = len(path)
        for j, o in enumerate(path):
            if o < x:
                bs[(o - 1) >> 1] = base + k - j
    return np.bincount(bs)


def forward_sweep(x: int, workers: int = 1, memo: bool = False,
                  max_steps: int = 100_000, cap: int = SWEEP_DEFAULT_CAP) -> SweepResult:
    """b(n) census of all odd n < x, plus the matching closed-form term table.

    Streaming mode splits the odd range into per-worker chunks whose
    histograms merge by addition; memo mode is single-process but much
    faster per core.
    """
    if x < 3:
        raise ValueError("x must be >= 3")
    if x > cap:
        raise ResourceCapExceeded(f"x={x} exceeds the sweep cap {cap}")
    if memo:
        counts = _sweep_memo(x, max_steps)
    else:
        edges = np.linspace(1, x if x % 2 else x - 1, workers + 1).astype(np.int64)
        edges = edges + (1 - edges % 2)  # odd-align chunk starts
        tasks = [(int(lo), int(hi), max_steps) for lo, hi in zip(edges, edges[1:]) if lo < hi]
        tasks[-1] = (tasks[-1][0], x, max_steps)
        if workers <= 1:
            parts = [_sweep_chunk(t) for t in tasks]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_sweep_chunk, tasks))
        width = max(len(p) for p in parts)
        counts = np.zeros(width, dtype=np.int64)
        for p in parts:
            counts[: len(p)] += p
    while len(counts) > 1 and counts[-1] == 0:
        counts = counts[:-1]
    m2 = [1.0] + [bnd.m2_term(b, x) for b in range(1, len(counts))]
    return SweepResult(x=x, counts=tuple(int(c) for c in counts), m2_terms=tuple(m2))


def rederive_histogram(b: int) -> dict[int, int]:
    """a-histogram for chain length b rebuilt from reconstructed integers.

    Every tail is solved, reconstructed, and run forward again; this is the
    full cross-module consistency oracle (keep b <= 4).
    """
    ctx = context(b)
    m = ctx.m
    hist: dict[int, int] = {}
    for tail in itertools.product(range(1, m + 1), repeat=b - 1):
        v1 = solve_v1(b, tail, ctx)
        t = trajectory(reconstruct_n((v1, *tail)))
        assert t.v == (v1, *tail)
        hist[t.a] = hist.get(t.a, 0) + 1
    return hist
