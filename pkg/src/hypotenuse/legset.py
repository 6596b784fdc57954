"""Exact enumeration of odd legs, even legs and the product set.

Every leg set is driven by pairs (a, b) with a < b:

* PRODUCT: n = ab with a^2 + b^2 prime and 1 < ab.
* EVEN:    n = 2ab with a^2 + b^2 an odd prime (2xy legs).
* ODD:     n = ab with a, b odd and (a^2 + b^2)/2 prime (x^2 - y^2 legs
           under a = x - y, b = x + y).

A prime a^2 + b^2 > 2 forces opposite parity and gcd(a, b) = 1, and a = b
only gives the excluded unit pair (1, 1), so rows start at b = a + 1 (or
a + 2 for ODD) and step by 2.
"""
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _pykernels
from ._parallel import scan
from .errors import check_range

MAX_LIMIT = 10**9
MAX_MULTIPLICITY_LIMIT = 10**8
WITNESS_DEFAULT_MAX = 10**7

PairFilter = Callable[[np.ndarray, np.ndarray], np.ndarray]


class LegKind(enum.Enum):
    ODD = "odd"
    EVEN = "even"
    PRODUCT = "product"


@dataclass
class MembershipTable:
    """Membership of [1, limit] in one leg set.

    ``member`` is a bool array indexed by n (index 0 unused). When
    witnesses are kept, ``witness(n)`` returns the admissible pair with
    the smallest first coordinate; for EVEN the pair satisfies 2ab = n,
    otherwise ab = n.
    """
    kind: LegKind
    limit: int
    member: np.ndarray
    count: int
    witness_a: Optional[np.ndarray] = field(default=None, repr=False)
    witness_b: Optional[np.ndarray] = field(default=None, repr=False)

    def members(self):
        return np.flatnonzero(self.member)

    def prefix_counts(self):
        return np.cumsum(self.member, dtype=np.int64)

    def count_upto(self, n):
        return int(np.count_nonzero(self.member[: n + 1]))

    def witness(self, n):
        if self.witness_a is None:
            raise ValueError("table was built without witnesses")
        if not (1 <= n <= self.limit and self.member[n]):
            return None
        return int(self.witness_a[n]), int(self.witness_b[n])


@dataclass
class MultiplicityMap:
    """m(n): ordered admissible pairs (a, b) with ab = n."""
    limit: int
    m: np.ndarray
    total: int

    def support_size(self):
        return int(np.count_nonzero(self.m))

    def second_moment(self):
        return int(np.dot(self.m.astype(np.int64), self.m.astype(np.int64)))


def _rows(kind, limit):
    """Row arrays (a, b_lo, b_hi) and the halving flag for ``kind``."""
    if kind is LegKind.ODD:
        cap = limit
        a = np.arange(1, math.isqrt(cap) + 1, 2, dtype=np.int64)
        return a, a + 2, cap // a, True
    cap = limit // 2 if kind is LegKind.EVEN else limit
    a = np.arange(1, math.isqrt(cap) + 1, dtype=np.int64)
    return a, a + 1, cap // a, False


def admissible_pairs(kind: LegKind, limit: int, workers: int = 1):
    """Unordered pairs (a < b) behind ``kind`` up to ``limit``.

    Returns uint32 arrays sorted by (a, b); the leg is ab (2ab for EVEN).
    """
    check_range("limit", limit, 1, MAX_LIMIT)
    a, blo, bhi, halve = _rows(LegKind(kind), limit)
    _, pa, pb = scan(a, blo, bhi, step=2, halve=halve, collect=True, workers=workers)
    return pa, pb


def legs_of(kind, a, b):
    n = a.astype(np.int64) * b.astype(np.int64)
    return 2 * n if kind is LegKind.EVEN else n


def ordered(a, b):
    """Both orientations of each unordered pair."""
    return np.concatenate((a, b)), np.concatenate((b, a))


def table_from_pairs(kind, limit, a, b, witness=None):
    kind = LegKind(kind)
    if witness is None:
        witness = limit <= WITNESS_DEFAULT_MAX
    n = legs_of(kind, a, b)
    member = np.zeros(limit + 1, dtype=bool)
    member[n] = True
    member[:2] = False
    wa = wb = None
    if witness:
        order = np.lexsort((a, n))
        first = np.unique(n[order], return_index=True)[1]
        pick = order[first]
        wa = np.zeros(limit + 1, dtype=np.uint32)
        wb = np.zeros(limit + 1, dtype=np.uint32)
        wa[n[pick]] = a[pick]
        wb[n[pick]] = b[pick]
    return MembershipTable(kind, limit, member, int(np.count_nonzero(member)), wa, wb)


def enumerate_legs(kind: LegKind, limit: int, pair_filter: Optional[PairFilter] = None,
                   *, witness: Optional[bool] = None, workers: int = 1) -> MembershipTable:
    """Exact membership table for one leg set on [1, limit].

    ``pair_filter`` receives ordered pair arrays (a, b) and returns a
    boolean mask; n is a member if some admissible pair for it survives.
    """
    kind = LegKind(kind)
    a, b = admissible_pairs(kind, limit, workers)
    if pair_filter is not None:
        a, b = ordered(a, b)
        keep = np.asarray(pair_filter(a, b), dtype=bool)
        a, b = a[keep], b[keep]
    return table_from_pairs(kind, limit, a, b, witness)


def even_legs_via_parametrisation(limit: int) -> MembershipTable:
    """Even legs 2xy with x^2 + y^2 an odd prime, straight from (x, y).

    Deliberately shares no code with :func:`enumerate_legs`: plain loops
    over all ordered (x, y) and the pure-Python primality test.
    """
    check_range("limit", limit, 1, MAX_LIMIT)
    is_prime = _pykernels.is_prime
    member = np.zeros(limit + 1, dtype=bool)
    half = limit // 2
    for x in range(1, half + 1):
        xx = x * x
        for y in range(1, half // x + 1):
            s = xx + y * y
            if s & 1 and is_prime(s):
                member[2 * x * y] = True
    return MembershipTable(LegKind.EVEN, limit, member, int(np.count_nonzero(member)))


def multiplicity_map(limit: int, pair_filter: Optional[PairFilter] = None,
                     *, workers: int = 1, pairs=None) -> MultiplicityMap:
    """Ordered-pair multiplicities m(n) for the product set.

    Counts are uint16; a count that would reach 2**16 raises OverflowError.
    """
    check_range("limit", limit, 1, MAX_MULTIPLICITY_LIMIT)
    if pairs is None:
        pairs = admissible_pairs(LegKind.PRODUCT, limit, workers)
    a, b = ordered(*pairs)
    if pair_filter is not None:
        keep = np.asarray(pair_filter(a, b), dtype=bool)
        a, b = a[keep], b[keep]
    return multiplicities(limit, legs_of(LegKind.PRODUCT, a, b))


def multiplicities(limit, products):
    counts = np.bincount(products, minlength=limit + 1)
    if counts.size and counts.max() >= 1 << 16:
        raise OverflowError("multiplicity exceeds 16-bit counter")
    return MultiplicityMap(limit, counts.astype(np.uint16), int(products.size))


@dataclass(frozen=True)
class DensityPoint:
    N: int
    count: int
    ratio: float
    delta: float


def delta_exponent(n, count):
    """log(N / count) / log log N; NaN when undefined."""
    if count <= 0 or n < 2:
        return math.nan
    return math.log(n / count) / math.log(math.log(n))


def density_series(kind: LegKind, checkpoints, *, workers: int = 1):
    """Counts, ratios and decay exponents at ascending checkpoints."""
    checkpoints = [int(c) for c in checkpoints]
    if not checkpoints or any(x >= y for x, y in zip(checkpoints, checkpoints[1:])):
        raise ValueError("checkpoints must be a non-empty ascending list")
    table = enumerate_legs(kind, checkpoints[-1], witness=False, workers=workers)
    prefix = table.prefix_counts()
    out = []
    for n in checkpoints:
        c = int(prefix[n])
        out.append(DensityPoint(n, c, c / n, delta_exponent(n, c)))
    return out
