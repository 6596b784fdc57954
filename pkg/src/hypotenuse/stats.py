"""Counting inputs of the upper bound, measured exactly.

``log`` is the natural logarithm throughout.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import sieve as sieve_mod
from .errors import check_range

MAX_LIMIT = 10**9


def _sieve_for(limit, fs, workers):
    if fs is not None and fs.limit >= limit:
        return fs
    return sieve_mod.shared(limit, workers)


@dataclass
class OmegaHistogram:
    limit: int
    counts: np.ndarray  # counts[i] = #{n <= limit : omega(n) = i}

    def __getitem__(self, i):
        return int(self.counts[i]) if 0 <= i < self.counts.size else 0


def omega_histogram(limit: int, *, fs=None, workers: int = 1) -> OmegaHistogram:
    check_range("limit", limit, 1, MAX_LIMIT)
    if limit == 1:
        return OmegaHistogram(1, np.array([1], dtype=np.int64))
    omega = _sieve_for(limit, fs, workers).tables("omega")
    return OmegaHistogram(limit, np.bincount(omega[1:limit + 1]).astype(np.int64))


def hr_majorant(limit, i, c0):
    """N/log N * (log log N + c0)^(i-1) / (i-1)!"""
    k = math.log(math.log(limit))
    return limit / math.log(limit) * (k + c0) ** (i - 1) / math.factorial(i - 1)


def hr_normalized_ratio(h: OmegaHistogram, c0: float) -> dict:
    """count(i) / majorant(i) for every i >= 1 in the histogram."""
    if c0 <= 0:
        raise ValueError("c0 must be positive")
    if h.limit < 3:
        raise ValueError("limit must be at least 3")
    return {i: h[i] / hr_majorant(h.limit, i, c0) for i in range(1, h.counts.size)}


def prime_powers_upto(limit):
    """Sorted prime powers p^v <= limit, v >= 1."""
    primes = sieve_mod.primes_upto(limit).astype(np.int64)
    powers = [primes]
    q = primes[primes <= math.isqrt(limit)]
    base = q.copy()
    while q.size:
        q = q * base
        keep = q <= limit
        q, base = q[keep], base[keep]
        powers.append(q)
    return np.sort(np.concatenate(powers))


def prime_power_reciprocal_series(checkpoints):
    """[(limit, sum_{p^v <= limit} p^-v, sum - log log limit), ...]"""
    checkpoints = sorted(int(c) for c in checkpoints)
    if checkpoints[0] < 3:
        raise ValueError("limits must be at least 3")
    pp = prime_powers_upto(checkpoints[-1])
    out = []
    total, done = 0.0, 0
    for c in checkpoints:
        upto = int(np.searchsorted(pp, c, side="right"))
        total = math.fsum([total, *(1.0 / pp[done:upto])])
        done = upto
        out.append((c, total, total - math.log(math.log(c))))
    return out


def prime_power_reciprocal_sum(limit: int):
    """(sum of 1/p^v over prime powers <= limit, sum - log log limit)."""
    _, total, gap = prime_power_reciprocal_series([limit])[0]
    return total, gap


@dataclass(frozen=True)
class ExceptionalReport:
    limit: int
    alpha: float
    L: int
    e1_size: int
    smooth_threshold: float
    e2_size: int


def exceptional_sets(limit: int, alpha: float, *, fs=None, workers: int = 1) -> ExceptionalReport:
    """Sizes of {n <= N : omega(n) > L} and {n <= N : P(n) <= N^(1/log log N)}."""
    if not 1 < alpha < 2:
        raise ValueError("alpha must lie in (1, 2)")
    check_range("limit", limit, 16, MAX_LIMIT)
    lln = math.log(math.log(limit))
    L = math.floor(alpha * lln)
    threshold = limit ** (1.0 / lln)
    omega, lpf = _sieve_for(limit, fs, workers).tables("omega", "lpf")
    e1 = int(np.count_nonzero(omega[1:limit + 1] > L))
    e2 = int(np.count_nonzero(lpf[1:limit + 1] <= threshold))
    return ExceptionalReport(limit, alpha, L, e1, threshold, e2)


def m_branches(alpha):
    la = math.log(alpha)
    return (1 - alpha + alpha * la, 2.0, 2 - alpha - alpha * math.log(2) + alpha * la)


def m_of_alpha(alpha: float) -> float:
    """Exponent saving for a given alpha: the least of the three branches."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return min(m_branches(alpha))


def best_alpha(step=1e-4):
    """Grid argmax of m_of_alpha over (1, 2)."""
    grid = np.arange(1 + step, 2, step)
    values = np.array([m_of_alpha(a) for a in grid])
    i = int(np.argmax(values))
    return float(grid[i]), float(values[i])


@dataclass(frozen=True)
class DivisorSummary:
    limit: int
    q1: float
    median: float
    q3: float
    reference: float  # log 2


def divisor_heuristic(limit: int, *, fs=None, workers: int = 1) -> DivisorSummary:
    """Quartiles of log d(n) / log log n over n in (limit/2, limit]."""
    check_range("limit", limit, 8, 10**8)
    ndiv = _sieve_for(limit, fs, workers).tables("ndiv")
    n = np.arange(limit // 2 + 1, limit + 1)
    n = n[n >= 3]
    ratio = np.log(ndiv[n].astype(np.float64)) / np.log(np.log(n))
    q1, med, q3 = np.percentile(ratio, [25, 50, 75])
    return DivisorSummary(limit, float(q1), float(med), float(q3), math.log(2))
