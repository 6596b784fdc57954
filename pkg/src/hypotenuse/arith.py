"""Exact integer primitives and the fixed real constants used elsewhere."""
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from . import _pykernels
from ._backend import kernels

U64_MAX = (1 << 64) - 1


def _check_u64(name, n):
    if not 0 <= n <= U64_MAX:
        raise ValueError(f"{name}={n} is not a 64-bit natural number")


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**64.

    Trial division by the primes below 100, then Miller-Rabin with a
    proven base set for the range of ``n`` (see ``_pykernels.MR_BOUNDS``).
    """
    _check_u64("n", n)
    return bool(kernels().is_prime(n))


def is_prime_reference(n: int) -> bool:
    """Pure-Python primality, independent of the compiled backend."""
    _check_u64("n", n)
    return _pykernels.is_prime(n)


def gcd(a: int, b: int) -> int:
    _check_u64("a", a)
    _check_u64("b", b)
    return math.gcd(a, b)


def sum_of_squares(a: int, b: int) -> int:
    """a^2 + b^2, refusing results that do not fit in 64 bits."""
    s = a * a + b * b
    if a < 0 or b < 0 or s > U64_MAX:
        raise OverflowError(f"{a}^2 + {b}^2 does not fit in 64 bits")
    return s


def brun_equation(c):
    """c(log c - 1) - 1, whose root is the c with (c/e)^c = e."""
    return c * (math.log(c) - 1.0) - 1.0


def solve_brun_constant() -> float:
    # f(3) < 0 < f(4), and f is increasing for c > 1.
    return brentq(brun_equation, 3.0, 4.0, xtol=1e-15)


@dataclass(frozen=True)
class PaperConstants:
    eta: float
    alpha_star: float
    c_brun: float
    log_four_minus_one: float

    @classmethod
    def compute(cls):
        log2 = math.log(2.0)
        return cls(
            eta=1.0 - (1.0 + math.log(log2)) / log2,
            alpha_star=1.0 / log2,
            c_brun=solve_brun_constant(),
            log_four_minus_one=math.log(4.0) - 1.0,
        )


CONSTANTS = PaperConstants.compute()
