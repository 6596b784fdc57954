"""Gaussian primes a + bi (a, b >= 1) in angular windows [beta, beta + gamma).

Window endpoints are the exact dyadic rationals held by the float
arguments; the upper endpoint is their exact sum. Membership is decided
by tangent monotonicity, b >= a tan(beta) and b < a tan(beta + gamma),
so each row a becomes an integer b-interval. Row bounds come from float
products, and any product within 1e-6 of an integer is recomputed with
60-digit tangents. No lattice point lies on an endpoint except b/a = 0
at beta = 0, which the half-open rule includes.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from ._parallel import scan
from .errors import check_range

MAX_X = 10**10
HL_EXPONENT = 0.381
_GUARD = 1e-6
_DPS = 60
_CAP = float(2**40)


@dataclass(frozen=True)
class SectorQuery:
    X: int
    beta: float
    gamma: float

    def __post_init__(self):
        check_range("X", self.X, 2, MAX_X)
        if not 0 <= self.beta <= math.pi / 2:
            raise ValueError("beta must lie in [0, pi/2]")
        if not 0 < self.gamma <= math.pi / 2:
            raise ValueError("gamma must lie in (0, pi/2]")

    @property
    def in_hl_range(self):
        """Whether gamma >= X^-0.381, where the lower bound is proven."""
        return self.gamma >= self.X ** -HL_EXPONENT


class _Tangent:
    """tan of an exact rational angle, with a float shortcut."""

    def __init__(self, angle: Fraction):
        with mpmath.workdps(_DPS):
            x = mpmath.mpf(angle.numerator) / angle.denominator
            self.unbounded = x >= mpmath.pi / 2
            self.exact = None if self.unbounded else mpmath.tan(x)
        self.zero = angle == 0
        self.approx = math.inf if self.unbounded else float(self.exact)

    def ceil_times(self, a):
        """ceil(a * tan) for an int64 array a; exact."""
        if self.zero:
            return np.zeros_like(a)
        # Past _CAP the bound exceeds every radius; no need to be exact there.
        prod = np.minimum(a * self.approx, _CAP)
        out = np.ceil(prod).astype(np.int64)
        near = np.flatnonzero((np.abs(prod - np.round(prod)) < _GUARD) & (prod < _CAP))
        if near.size:
            with mpmath.workdps(_DPS):
                for i in near.tolist():
                    out[i] = int(mpmath.ceil(int(a[i]) * self.exact))
        return out


def row_bounds(q: SectorQuery):
    """Rows (a, b_lo, b_hi) covering exactly the window's lattice points."""
    lo = _Tangent(Fraction(q.beta))
    hi = _Tangent(Fraction(q.beta) + Fraction(q.gamma))
    amax = math.isqrt(q.X - 1)
    a = np.arange(1, amax + 1, dtype=np.int64)
    radius = np.array([math.isqrt(q.X - v * v) for v in range(1, amax + 1)], dtype=np.int64)
    blo = np.maximum(lo.ceil_times(a), 1)
    bhi = radius if hi.unbounded else np.minimum(hi.ceil_times(a) - 1, radius)
    return a, blo, bhi


def sector_pairs(q: SectorQuery, *, workers: int = 1):
    """(a, b) arrays of prime-norm lattice points in the window."""
    a, blo, bhi = row_bounds(q)
    _, pa, pb = scan(a, blo, bhi, step=1, collect=True, workers=workers)
    return pa, pb


def sector_count(q: SectorQuery, *, workers: int = 1) -> int:
    a, blo, bhi = row_bounds(q)
    count, _, _ = scan(a, blo, bhi, step=1, collect=False, workers=workers)
    return int(count)


def hl_ratio(q: SectorQuery, count=None, *, workers: int = 1) -> float:
    """count * log X / (gamma X): the empirical constant in the lower bound."""
    if q.X < 100:
        raise ValueError("X must be at least 100")
    if count is None:
        count = sector_count(q, workers=workers)
    return count * math.log(q.X) / (q.gamma * q.X)


@dataclass(frozen=True)
class DyadicSector:
    i: int
    beta: float
    gamma: float
    X: int
    count: int
    max_ab: int
    unit_pairs: int


def dyadic_plan(N):
    """[(i, beta_i, gamma_i, X_i)] for i with 2^(10 i) <= N."""
    out = []
    i = 1
    while 1 << (10 * i) <= N:
        angle = math.pi / 2 ** (i + 1)
        X = (N << i) >> 2  # floor(2^(i-2) N)
        out.append((i, angle, angle, X))
        i += 1
    return out


def dyadic_l0_bound(N: int, *, workers: int = 1):
    """Certified lower bound for the ordered pairs with 1 < ab <= N and prime norm.

    Every pair found in the dyadic sectors is checked to satisfy ab <= N
    with integers. The unit pair (1, 1) has prime norm but ab = 1, so it
    is dropped from the total and reported as ``unit_pairs``.

    Returns (total, [DyadicSector, ...]).
    """
    check_range("N", N, 1, 10**8)
    sectors = []
    total = 0
    for i, beta, gamma, X in dyadic_plan(N):
        pa, pb = sector_pairs(SectorQuery(X, beta, gamma), workers=workers)
        ab = pa.astype(np.int64) * pb.astype(np.int64)
        max_ab = int(ab.max()) if ab.size else 0
        if max_ab > N:
            raise RuntimeError(f"sector {i}: pair with ab = {max_ab} > N = {N}")
        units = int(np.count_nonzero(ab == 1))
        total += ab.size - units
        sectors.append(DyadicSector(i, beta, gamma, X, int(ab.size), max_ab, units))
    return total, sectors


def jordan_check(grid, tol=1e-12) -> bool:
    """(2/pi) x <= sin x <= x at every grid point, up to ``tol``."""
    x = np.asarray(grid, dtype=np.float64)
    if np.any((x < 0) | (x > math.pi / 2)):
        raise ValueError("grid must lie in [0, pi/2]")
    s = np.sin(x)
    return bool(np.all(2 / math.pi * x <= s + tol) and np.all(s <= x + tol))
