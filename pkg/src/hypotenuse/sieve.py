"""Segmented smallest-prime-factor sieve and the statistics it drives.

``spf`` is a uint32 table indexed by n, with ``spf[1] == 1`` as a
convenience sentinel and ``spf[0] == 0``. Memory is 4 bytes per integer,
so the supported ceiling of 10**9 needs 4 GB for the table alone.
"""
import math

import numpy as np

from ._backend import kernels
from ._parallel import map_ordered
from .errors import check_range

MAX_LIMIT = 10**9
DEFAULT_SEGMENT = 1 << 20


def primes_upto(n):
    """Primes <= n by a plain Eratosthenes sieve (uint32 array)."""
    if n < 2:
        return np.empty(0, dtype=np.uint32)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.flatnonzero(flags).astype(np.uint32)


class FactorSieve:
    """Smallest prime factor of every integer in [2, limit]."""

    TABLES = ("omega", "big_omega", "lpf", "ndiv")

    def __init__(self, limit, spf):
        self.limit = limit
        self.spf = spf
        self._tables = {}

    def __repr__(self):
        return f"FactorSieve(limit={self.limit})"

    def _check(self, n):
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside sieve range [1, {self.limit}]")

    def factorize(self, n):
        """[(p, e), ...] in increasing p; empty for n = 1."""
        self._check(n)
        spf = self.spf
        out = []
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def omega(self, n):
        return len(self.factorize(n))

    def big_omega(self, n):
        return sum(e for _, e in self.factorize(n))

    def largest_prime_factor(self, n):
        """P(n), with P(1) = 1."""
        f = self.factorize(n)
        return f[-1][0] if f else 1

    def divisors(self, n):
        divs = [1]
        for p, e in self.factorize(n):
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def divisor_count(self, n):
        return math.prod(e + 1 for _, e in self.factorize(n))

    def divisor_pairs(self, n):
        """All (a, b) with a <= b and ab = n, sorted by a."""
        return [(d, n // d) for d in self.divisors(n) if d * d <= n]

    def primes(self):
        idx = np.arange(self.limit + 1, dtype=np.uint32)
        hit = self.spf == idx
        hit[:2] = False
        return np.flatnonzero(hit)

    def tables(self, *names):
        """Bulk per-integer tables, computed together in one pass and cached.

        Names: ``omega`` and ``big_omega`` (uint8), ``lpf`` (largest prime
        factor, uint32) and ``ndiv`` (divisor count, uint32). Index 0 is
        unused; index 1 follows the conventions omega = Omega = 0,
        P(1) = 1, d(1) = 1.
        """
        bad = set(names) - set(self.TABLES)
        if bad:
            raise ValueError(f"unknown tables {sorted(bad)}")
        missing = [name for name in names if name not in self._tables]
        if missing:
            size = self.limit + 1
            out = {
                "omega": np.zeros(size, dtype=np.uint8) if "omega" in missing else None,
                "big_omega": np.zeros(size, dtype=np.uint8) if "big_omega" in missing else None,
                "lpf": np.zeros(size, dtype=np.uint32) if "lpf" in missing else None,
                "ndiv": np.zeros(size, dtype=np.uint32) if "ndiv" in missing else None,
            }
            kernels().factor_tables(self.spf, **out)
            self._tables.update({k: v for k, v in out.items() if v is not None})
        if len(names) == 1:
            return self._tables[names[0]]
        return tuple(self._tables[name] for name in names)


def build(limit, *, segment_size=DEFAULT_SEGMENT, workers=1):
    """Sieve smallest prime factors over [2, limit].

    Base primes up to sqrt(limit) come first; the segments
    [k*segment_size, (k+1)*segment_size) are then independent and are
    filled in parallel.
    """
    check_range("limit", limit, 2, MAX_LIMIT)
    if segment_size < 2 or segment_size & (segment_size - 1):
        raise ValueError("segment_size must be a power of two")
    base = primes_upto(math.isqrt(limit))
    spf = np.zeros(limit + 1, dtype=np.uint32)
    spf[1] = 1
    k = kernels()
    bounds = [(max(lo, 2), min(lo + segment_size, limit + 1))
              for lo in range(0, limit + 1, segment_size)]
    bounds = [(lo, hi) for lo, hi in bounds if lo < hi]
    map_ordered(lambda seg: k.spf_fill(spf, seg[0], seg[1], base), bounds, workers)
    return FactorSieve(limit, spf)


_cache = {}


def shared(limit, workers=1):
    """A cached sieve covering at least ``limit`` (read-only use)."""
    for s in _cache.values():
        if s.limit >= limit:
            return s
    s = build(limit, workers=workers)
    _cache.clear()
    _cache[limit] = s
    return s
