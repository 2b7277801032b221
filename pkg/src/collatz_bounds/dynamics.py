"""Forward Collatz/Syracuse dynamics and the inverse (predecessor) map."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class StepBudgetExceeded(RuntimeError):
    """A trajectory failed to reach 1 within its step budget."""


def collatz_step(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return 3 * n + 1 if n % 2 else n // 2


def syracuse(n: int) -> tuple[int, int]:
    """One odd-to-odd step: returns (next odd value, number of divisions by 2)."""
    if n % 2 == 0:
        raise ValueError(f"syracuse is defined on odd integers, got {n}")
    if n < 1:
        raise ValueError("n must be positive")
    w = 3 * n + 1
    j = (w & -w).bit_length() - 1
    return w >> j, j


@dataclass(frozen=True)
class Trajectory:
    """Forward Syracuse orbit of an odd start down to 1.

    steps holds (odd value reached, divisions used) per application; b is the
    number of applications, a the total of all division exponents, and v the
    division sequence in reverse step order (v[i] belongs to step b-1-i).
    """

    n: int
    steps: tuple[tuple[int, int], ...]

    @property
    def b(self) -> int:
        return len(self.steps)

    @property
    def a(self) -> int:
        return sum(j for _, j in self.steps)

    @property
    def v(self) -> tuple[int, ...]:
        return tuple(j for _, j in reversed(self.steps))


def trajectory(n: int, max_steps: int = 100_000) -> Trajectory:
    """Follow the Syracuse orbit of odd n until it reaches 1."""
    if n % 2 == 0:
        raise ValueError(f"trajectory is defined on odd integers, got {n}")
    steps = []
    v = n
    while v != 1:
        if len(steps) >= max_steps:
            raise StepBudgetExceeded(
                f"orbit of {n} did not reach 1 within {max_steps} steps"
            )
        v, j = syracuse(v)
        steps.append((v, j))
    return Trajectory(n=n, steps=tuple(steps))


def inverse_children(n: int, cutoff: int) -> list[int]:
    """Odd predecessors (n*2^k - 1)/3 <= cutoff, in ascending k order.

    Empty for n = 0 mod 3.  For n = 1 the k = 2 self-child is dropped so the
    predecessor relation is a tree.
    """
    if n % 2 == 0:
        raise ValueError(f"inverse map is defined on odd integers, got {n}")
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    r = n % 3
    if r == 0:
        return []
    k = 2 if r == 1 else 1
    if n == 1:
        k = 4
    out = []
    while True:
        c = (n * 2**k - 1) // 3
        if c > cutoff:
            return out
        out.append(c)
        k += 2


def inverse_tree_count(max_depth: int, cutoff: int) -> list[int]:
    """Count odd integers <= cutoff at each depth 1..max_depth of the tree rooted at 1.

    Depth is intrinsic (the number of Syracuse steps back to 1), so a value
    above the cutoff must still be expanded while its descendants can shrink
    back under it: the smallest child of n is (2n-1)/3, so after r more
    levels nothing below n*(2/3)^r can appear.  Intermediate frontiers are
    therefore capped at cutoff*(3/2)^remaining rather than at the cutoff,
    and only values <= cutoff are counted at each depth.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    counts = []
    frontier: deque[int] = deque([1])
    for depth in range(1, max_depth + 1):
        remaining = max_depth - depth
        cap = cutoff * 3**remaining // 2**remaining + 1
        nxt: deque[int] = deque()
        for n in frontier:
            nxt.extend(inverse_children(n, cap))
        counts.append(sum(1 for v in nxt if v <= cutoff))
        frontier = nxt
    return counts
