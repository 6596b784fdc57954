"""Exact checks of the inputs fed to Brun's sieve.

The sifted sequence is m(a^2 + b0^2 m^2) for 1 <= m <= X. Densities and
remainders are exact ``Fraction`` values; nothing here rounds.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import CONSTANTS, U64_MAX
from .sieve import primes_upto


def factor_small(d):
    """Trial-division factorisation [(p, e), ...] for modest d."""
    if d < 1:
        raise ValueError(f"d={d} must be positive")
    out = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if d > 1:
        out.append((d, 1))
    return out


def squarefree_primes(d):
    """Prime divisors of a squarefree d; ValueError otherwise."""
    f = factor_small(d)
    if any(e > 1 for _, e in f):
        raise ValueError(f"d={d} is not squarefree")
    return [p for p, _ in f]


@dataclass(frozen=True)
class DensityFunction:
    """g(p) = 3/p for p = 1 (mod 4) with p not dividing a*b0, else 1/p."""
    a: int
    b0: int

    def local_count(self, p):
        """g(p) * p, the expected number of roots modulo p."""
        return 3 if (self.a * self.b0) % p and p % 4 == 1 else 1

    def at_prime(self, p):
        return Fraction(self.local_count(p), p)


@dataclass(frozen=True)
class SieveInstance:
    a: int
    b0: int
    X: int
    z: float

    def __post_init__(self):
        if self.a < 1 or self.b0 < 1 or self.X < 1:
            raise ValueError("a, b0 and X must be positive")
        if (self.a * self.b0) % 2 or math.gcd(self.a, self.b0) != 1:
            raise ValueError(f"(a, b0) = ({self.a}, {self.b0}) is not admissible: "
                             "need a*b0 even and gcd(a, b0) = 1")
        if self.a**2 + self.b0**2 * self.X**2 > U64_MAX:
            raise OverflowError("a^2 + b0^2 X^2 exceeds 64 bits")

    @property
    def density(self):
        return DensityFunction(self.a, self.b0)


def g_eval(df: DensityFunction, d: int) -> Fraction:
    """g(d) for squarefree d, extended multiplicatively from the primes."""
    out = Fraction(1)
    for p in squarefree_primes(d):
        out *= df.at_prime(p)
    return out


def _residue_values(inst, m, d):
    """m (a^2 + b0^2 m^2) mod d, elementwise; exact for d < 3e9."""
    r = m % d
    a2 = inst.a * inst.a % d
    b2 = inst.b0 * inst.b0 % d
    return r * ((a2 + b2 * (r * r % d)) % d) % d


def local_solution_count(inst: SieveInstance, p: int) -> int:
    """#{m mod p : m (a^2 + b0^2 m^2) = 0 mod p}, by scanning every residue."""
    m = np.arange(p, dtype=np.int64)
    return int(np.count_nonzero(_residue_values(inst, m, p) == 0))


def solution_residues(inst, d):
    m = np.arange(d, dtype=np.int64)
    return np.flatnonzero(_residue_values(inst, m, d) == 0)


def crt_residues(r1, d1, r2, d2):
    """All residues mod d1*d2 congruent to some r1 mod d1 and some r2 mod d2."""
    if math.gcd(d1, d2) != 1:
        raise ValueError("moduli must be coprime")
    e1 = d2 * pow(d2, -1, d1)
    e2 = d1 * pow(d1, -1, d2)
    d = d1 * d2
    out = (np.asarray(r1, dtype=object)[:, None] * e1
           + np.asarray(r2, dtype=object)[None, :] * e2) % d
    return np.sort(out.ravel().astype(np.int64))


def count_in_classes(residues, d, X):
    """#{1 <= m <= X : m mod d in residues}."""
    residues = np.asarray(residues, dtype=np.int64)
    full, rest = divmod(X, d)
    tail = np.count_nonzero((residues >= 1) & (residues <= rest))
    return full * residues.size + int(tail)


def divisible_count(inst: SieveInstance, d: int, m=None) -> int:
    """|A_d| = #{1 <= m <= X : d | m (a^2 + b0^2 m^2)}, counted directly."""
    if m is None:
        m = np.arange(1, inst.X + 1, dtype=np.int64)
    return int(np.count_nonzero(_residue_values(inst, m, d) == 0))


def remainder(inst: SieveInstance, d: int, m=None) -> Fraction:
    """r_d = |A_d| - X g(d), exactly."""
    primes = squarefree_primes(d)
    if any(p >= inst.z for p in primes):
        raise ValueError(f"d={d} has a prime factor >= z={inst.z}")
    g = Fraction(1)
    for p in primes:
        g *= inst.density.at_prime(p)
    return divisible_count(inst, d, m) - inst.X * g


def remainder_bound(inst, d):
    """g(d) * d, the allowed size of |r_d|."""
    return g_eval(inst.density, d) * d


def primes_below(z):
    return primes_upto(max(math.ceil(z) - 1, 1))


def _v_product(df, z):
    return math.prod(1.0 - df.local_count(int(p)) / int(p) for p in primes_below(z))


def v_of_z(df: DensityFunction, z: float):
    """V(z) = prod_{p < z} (1 - g(p)), and V(z) (log z)^2."""
    if z < 3:
        raise ValueError("z must be at least 3")
    v = _v_product(df, z)
    if v <= 0:
        raise ValueError("a factor 1 - g(p) is not positive")
    return v, v * math.log(z) ** 2


@dataclass(frozen=True)
class SiftingCheck:
    passed: bool
    log_z: float
    bound: float
    V: float


def sifting_condition(inst: SieveInstance, c: float = CONSTANTS.c_brun) -> SiftingCheck:
    """log z <= log X / (c log(V(z)^{-1} log X)), both sides reported."""
    if inst.X < 3:
        raise ValueError("X must be at least 3")
    v = _v_product(inst.density, inst.z)
    log_x = math.log(inst.X)
    bound = log_x / (c * math.log(log_x / v))
    log_z = math.log(inst.z)
    return SiftingCheck(log_z <= bound, log_z, bound, v)


def asymptotic_parameters(N):
    """(X, z) with X = ceil(N^{1/log log N}) and z = N^{(log log N)^{-3}}."""
    lln = math.log(math.log(N))
    return math.ceil(N ** (1.0 / lln)), N ** (lln ** -3)


def squarefree_upto(limit, prime_bound):
    """Squarefree d <= limit whose prime factors are all < prime_bound."""
    out = [1]
    for p in primes_upto(max(prime_bound - 1, 1)).tolist():
        out += [d * p for d in out if d * p <= limit]
    return sorted(out)


def sample_instances(count, seed, X, z=50.0, max_value=1000):
    """Seeded admissible (a, b0) instances, by rejection sampling."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        a, b0 = (int(v) for v in rng.integers(1, max_value + 1, size=2))
        if (a * b0) % 2 == 0 and math.gcd(a, b0) == 1:
            out.append(SieveInstance(a, b0, X, z))
    return out


@dataclass
class RemainderReport:
    instance: SieveInstance
    checked: int
    violations: int
    worst_ratio: Fraction


def check_remainders(inst: SieveInstance, d_values) -> RemainderReport:
    """Test |r_d| <= g(d) d for every d, in exact arithmetic."""
    m = np.arange(1, inst.X + 1, dtype=np.int64)
    violations = 0
    worst = Fraction(0)
    for d in d_values:
        r = remainder(inst, d, m)
        bound = remainder_bound(inst, d)
        if abs(r) > bound:
            violations += 1
        worst = max(worst, abs(r) / bound)
    return RemainderReport(inst, len(d_values), violations, worst)


def check_local_counts(inst: SieveInstance, primes):
    """Primes p where the residue scan disagrees with g(p) p."""
    return [p for p in primes
            if local_solution_count(inst, p) != inst.density.local_count(p)]
