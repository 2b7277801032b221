"""Real-valued analytic layer: closed-form bounds, series identities, step-count law.

Everything here is binary64; exactness lives in the integer modules.  The
recurring constants are t = log2(3) and c = 2 - t.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

T = math.log2(3.0)
C = 2.0 - T
Z = 1.0 / 3.0
COEFFICIENT2 = (3.0 / 16.0) / C  # 0.45177...
COEFFICIENT3 = (9.0 / 64.0) / C  # 0.33882...

SERIES_B_CAP = 1_000_000


class NonConvergence(RuntimeError):
    """A series sum failed to satisfy its stopping rule within the b cap."""


@dataclass(frozen=True)
class Constants:
    t: float = T
    c: float = C
    z: float = Z
    coefficient2: float = COEFFICIENT2
    coefficient3: float = COEFFICIENT3


CONSTANTS = Constants()


def a_of_x(x: float, b: int) -> float:
    """Sum-of-exponents budget a(x) = log2(x) + b*log2(3) for chains of length b."""
    if x <= 1:
        raise ValueError("x must be > 1")
    return math.log2(x) + b * T


def _binom_over_3b(r: float, k: int) -> float:
    """binom(r, k) * 3^(-k) as one fused product, to dodge float overflow."""
    out = 1.0
    for i in range(k):
        out *= (r - i) / (3 * (i + 1))
    return out


def m2_term(b: int, x: float) -> float:
    """Per-b term (3/2) * binom(a(x)-4, b) * 3^(-b); clamped to 0 when meaningless."""
    r = a_of_x(x, b) - 4
    if r < 0:
        logger.debug("m2_term(b=%d, x=%g): negative upper index %.3f, clamped to 0", b, x, r)
        return 0.0
    val = 1.5 * _binom_over_3b(r, b)
    if val < 0:
        logger.debug("m2_term(b=%d, x=%g): oscillatory term %.3g, clamped to 0", b, x, val)
        return 0.0
    return val


def m3_term(b: int, x: float) -> float:
    """Per-b term (3/2) * binom(a(x)-6, b-1) * 3^(-b+1) of the v1=4 bound."""
    if b < 1:
        raise ValueError("b must be >= 1")
    r = a_of_x(x, b) - 6
    if r < 0 and b > 1:
        logger.debug("m3_term(b=%d, x=%g): negative upper index %.3f, clamped to 0", b, x, r)
        return 0.0
    val = 1.5 * _binom_over_3b(r, b - 1)
    if val < 0:
        logger.debug("m3_term(b=%d, x=%g): oscillatory term %.3g, clamped to 0", b, x, val)
        return 0.0
    return val


def m2_closed(x: float) -> float:
    """Closed form of the candidate bound: (3/16)/(2-log2 3) * x - 1/2."""
    return COEFFICIENT2 * x - 0.5


def m3_closed(x: float) -> float:
    """Closed form of the v1=4 bound: (9/64)/(2-log2 3) * x."""
    return COEFFICIENT3 * x


def mean_closed(x: float) -> float:
    """Closed-form mean of the step-count law: l/c + (5t-8)/c^2 with l = log2 x."""
    if x <= 1:
        raise ValueError("x must be > 1")
    return math.log2(x) / C + (5 * T - 8) / C**2


def var_closed(x: float) -> float:
    """Closed-form variance: (l(4-2t) + 2t^2 + 8t - 16)/c^4."""
    if x <= 1:
        raise ValueError("x must be > 1")
    l = math.log2(x)
    return (l * (4 - 2 * T) + 2 * T**2 + 8 * T - 16) / C**4


def series_sum(l: float, shift: float = 0.0, tol: float = 1e-12) -> float:
    """Truncated sum_b 3^(-b) binom(b*t + l + shift, b), which equals 2*2^(l+shift)/c.

    Terms are unimodal and concentrate around the closed-form mean, so the
    sum stops at the first b past mean + 12*sd whose term is below 1e-15 of
    the partial sum; failing that within the cap raises NonConvergence.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    l_eff = l + shift
    mean = l_eff / C + (5 * T - 8) / C**2
    var = max(1.0, (l_eff * (4 - 2 * T) + 2 * T**2 + 8 * T - 16) / C**4)
    b_soft = mean + 12 * math.sqrt(var)
    total = 0.0
    for b in range(SERIES_B_CAP):
        term = _binom_over_3b(b * T + l_eff, b)
        total += term
        if b > b_soft and abs(term) < 1e-15 * abs(total):
            return total
    raise NonConvergence(f"series at l={l}, shift={shift} did not settle within {SERIES_B_CAP} terms")


def bt_identity_residual(y: float) -> float:
    """Residual of y - (1/3) y^t - 1, whose only positive roots are 2 and 4."""
    if y <= 0:
        raise ValueError("y must be positive")
    return y - y**T / 3.0 - 1.0


@dataclass(frozen=True)
class BDistribution:
    """The step-count law P(B=b) = (8c/x) binom(a(x)-4, b) 3^(-b) on [0, b_max]."""

    x: float
    probs: tuple[float, ...] = field(repr=False)

    @property
    def b_max(self) -> int:
        return len(self.probs) - 1

    def moment(self, k: int) -> float:
        return sum(p * b**k for b, p in enumerate(self.probs))

    def mean(self) -> float:
        return self.moment(1)

    def variance(self) -> float:
        mu = self.mean()
        return sum(p * (b - mu) ** 2 for b, p in enumerate(self.probs))

    def central_moment(self, k: int) -> float:
        mu = self.mean()
        return sum(p * (b - mu) ** k for b, p in enumerate(self.probs))


def b_distribution(x: float) -> BDistribution:
    """Tabulate the step-count law to at least mean + 12 standard deviations.

    The right tail decays geometrically with ratio t^t/(3(t-1)^(t-1)) ~ 0.947,
    so the support keeps extending past the 12-sigma point until the terms
    stop mattering at the normalization tolerance.
    """
    if x < 2**10:
        raise ValueError("x must be >= 2^10 (the law degenerates below)")
    l = math.log2(x)
    b_soft = mean_closed(x) + 12 * math.sqrt(var_closed(x))
    scale = 8 * C / x
    probs = []
    for b in range(SERIES_B_CAP):
        term = scale * _binom_over_3b(l - 4 + b * T, b)
        probs.append(term)
        if b > b_soft and term < 5e-14:
            break
    else:
        raise NonConvergence(f"step-count law at x={x} did not settle within {SERIES_B_CAP} terms")
    return BDistribution(x=x, probs=tuple(probs))


def normality_diagnostic(x: float) -> tuple[float, float]:
    """Standardized third and fourth central moments: (skewness, excess kurtosis)."""
    dist = b_distribution(x)
    sd = math.sqrt(dist.variance())
    skew = dist.central_moment(3) / sd**3
    exkurt = dist.central_moment(4) / sd**4 - 3.0
    return skew, exkurt


def m2_truncated(x: float) -> float:
    """Sum of m2_term over the two-sigma window around the closed-form mean."""
    if x < 2**10:
        raise ValueError("x must be >= 2^10")
    mean = mean_closed(x)
    sd = math.sqrt(var_closed(x))
    lo = max(1, math.floor(mean - 2 * sd))
    hi = math.ceil(mean + 2 * sd)
    return sum(m2_term(b, x) for b in range(lo, hi + 1))


def b_min_threshold(x: float) -> float:
    """Chain length below which the per-b counts are negligible: ln(log2 x) + 1."""
    if x <= 2:
        raise ValueError("x must be > 2")
    return math.log(math.log2(x)) + 1.0
