"""Ordered pair sets behind the lower bound, and their second moment.

L0 holds the ordered pairs (a, b) with 1 < ab <= N and a^2 + b^2 prime.
Three exceptional subsets are removed:

* L1: P(ab) <= N^(1/log log N)
* L2: omega(a) > (1 + eps) log log N
* L3: omega(b) > (1 + eps) log log N

Each pair carries its own flags, so the union is exact.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import sieve as sieve_mod
from .arith import CONSTANTS
from .errors import check_range
from .legset import LegKind, MultiplicityMap, admissible_pairs, multiplicities, ordered

MAX_LIMIT = 10**7


@dataclass(frozen=True)
class LConfig:
    N: int
    epsilon: float = 0.1

    def __post_init__(self):
        check_range("N", self.N, 16, MAX_LIMIT)
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")

    @property
    def lln(self):
        return math.log(math.log(self.N))

    @property
    def T(self) -> int:
        return math.floor((1 + self.epsilon) * self.lln)

    @property
    def omega_threshold(self) -> float:
        return (1 + self.epsilon) * self.lln

    @property
    def smooth_threshold(self) -> float:
        return self.N ** (1.0 / self.lln)


@dataclass
class LReport:
    config: LConfig
    l0: int
    l1: int
    l2: int
    l3: int
    union: int  # |L1 u L2 u L3|
    l_size: int
    multiplicities: MultiplicityMap
    s_n: int
    diagonal: int
    off_diagonal: int
    cauchy_lower: float

    @property
    def distinct_products(self):
        return self.multiplicities.support_size()

    @property
    def normalized_moment(self):
        """S(N) / (N (log N)^(log 4 - 1)), reported as a trend only."""
        N = self.config.N
        return self.s_n / (N * math.log(N) ** CONSTANTS.log_four_minus_one)


def _tables(N, workers, fs):
    if fs is None or fs.limit < N:
        fs = sieve_mod.shared(N, workers)
    return fs.tables("omega", "lpf")


def l0_pairs(N, workers=1):
    """Ordered pairs of L0 as int64 arrays."""
    a, b = ordered(*admissible_pairs(LegKind.PRODUCT, N, workers))
    return a.astype(np.int64), b.astype(np.int64)


def second_moment(mmap: MultiplicityMap):
    """(S, diagonal, off-diagonal) with S = sum m(n)^2 and diagonal = sum m(n)."""
    m = mmap.m.astype(np.int64)
    s = int(np.dot(m, m))
    diag = int(m.sum())
    return s, diag, s - diag


def build_l_sets(cfg: LConfig, *, workers: int = 1, fs=None) -> LReport:
    omega, lpf = _tables(cfg.N, workers, fs)
    a, b = l0_pairs(cfg.N, workers)
    in_l1 = np.maximum(lpf[a], lpf[b]) <= cfg.smooth_threshold
    in_l2 = omega[a] > cfg.omega_threshold
    in_l3 = omega[b] > cfg.omega_threshold
    bad = in_l1 | in_l2 | in_l3
    keep = ~bad
    mmap = multiplicities(cfg.N, a[keep] * b[keep])
    s, diag, off = second_moment(mmap)
    size = int(np.count_nonzero(keep))
    return LReport(
        config=cfg,
        l0=int(a.size),
        l1=int(np.count_nonzero(in_l1)),
        l2=int(np.count_nonzero(in_l2)),
        l3=int(np.count_nonzero(in_l3)),
        union=int(np.count_nonzero(bad)),
        l_size=size,
        multiplicities=mmap,
        s_n=s,
        diagonal=diag,
        off_diagonal=off,
        cauchy_lower=size * size / s if s else 0.0,
    )


def product_count(N, workers=1):
    """C(N): distinct products ab <= N over L0."""
    a, b = admissible_pairs(LegKind.PRODUCT, N, workers)
    n = a.astype(np.int64) * b.astype(np.int64)
    return int(np.unique(n).size)


def cauchy_bound_check(cfg: LConfig, *, workers: int = 1, report=None):
    """(lower, C(N), lower <= C(N)) with lower = |L|^2 / S(N)."""
    if report is None:
        report = build_l_sets(cfg, workers=workers)
    c = product_count(cfg.N, workers)
    return report.cauchy_lower, c, report.cauchy_lower <= c


def gcd_decompose(a, b, c, d):
    """(g, u, v, w) with a = gu, c = gv, b = vw and d = uw, given ab = cd."""
    if min(a, b, c, d) < 1:
        raise ValueError("arguments must be positive")
    if a * b != c * d:
        raise ValueError(f"{a}*{b} != {c}*{d}")
    g = math.gcd(a, c)
    u, v = a // g, c // g
    w = b // v
    assert b == v * w and d == u * w
    return g, u, v, w


def restricted_first_moment(N: int, kappa: float, *, workers: int = 1, fs=None) -> int:
    """Ordered L0 pairs with omega(a) and omega(b) both near log log N / (2 log 2).

    "Near" means within kappa log log N, inclusive.
    """
    check_range("N", N, 16, MAX_LIMIT)
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    omega, _ = _tables(N, workers, fs)
    lln = math.log(math.log(N))
    center = lln / (2 * math.log(2))
    width = kappa * lln
    near = np.abs(omega.astype(np.float64) - center) <= width
    a, b = l0_pairs(N, workers)
    return int(np.count_nonzero(near[a] & near[b]))
