import math

import gmpy2
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypotenuse import arith
from hypotenuse.arith import CONSTANTS

import oracles

def bpsw(n):
    """Reference verdict; BPSW has no known counterexample below 2**64."""
    return n >= 2 and (n == 2 or (n % 2 == 1 and bool(gmpy2.is_bpsw_prp(n))))


# Strong pseudoprimes to several small bases; all composite.
PSEUDOPRIMES = [2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
                341550071728321, 3825123056546413051]


def test_small_primes_match_trial_division(backend):
    got = [n for n in range(0, 20000) if arith.is_prime(n)]
    assert got == oracles.prime_list(19999)


def test_exhaustive_up_to_a_million(backend):
    from hypotenuse.sieve import primes_upto
    if backend == "python":
        limit = 200_000
    else:
        limit = 10**6
    expected = set(primes_upto(limit).tolist())
    bad = [n for n in range(limit + 1) if arith.is_prime(n) != (n in expected)]
    assert bad == []


def test_sieve_itself_matches_trial_division():
    from hypotenuse.sieve import primes_upto
    assert primes_upto(5000).tolist() == oracles.prime_list(5000)


def test_large_prime_from_trial_division(backend):
    assert oracles.is_prime_td(10**14 + 31)
    assert arith.is_prime(10**14 + 31)
    assert not arith.is_prime(10**14 + 33)


@pytest.mark.parametrize("n", PSEUDOPRIMES)
def test_strong_pseudoprimes_rejected(backend, n):
    assert arith.is_prime(n) == bpsw(n)


def test_edges(backend):
    assert not arith.is_prime(0)
    assert not arith.is_prime(1)
    assert arith.is_prime(2)
    assert arith.is_prime((1 << 64) - 59)  # largest 64-bit prime
    assert not arith.is_prime((1 << 64) - 1)
    with pytest.raises(ValueError):
        arith.is_prime(1 << 64)
    with pytest.raises(ValueError):
        arith.is_prime(-1)


@settings(max_examples=400, deadline=None)
@given(st.integers(min_value=0, max_value=(1 << 64) - 1))
def test_random_u64_against_bpsw(n):
    expected = bpsw(n)
    assert arith.is_prime(n) == expected
    assert arith.is_prime_reference(n) == expected


def test_random_semiprimes_and_primes(backend):
    rng = np.random.default_rng(7)
    for _ in range(300):
        p = int(gmpy2.next_prime(int(rng.integers(1 << 20, 1 << 31))))
        q = int(gmpy2.next_prime(int(rng.integers(1 << 20, 1 << 31))))
        assert arith.is_prime(p)
        assert not arith.is_prime(p * q)


def test_gcd_and_sum_of_squares():
    assert arith.gcd(12, 18) == 6
    assert arith.gcd(0, 5) == 5
    assert arith.sum_of_squares(2, 5) == 29
    with pytest.raises(OverflowError):
        arith.sum_of_squares(1 << 32, 1 << 32)


def test_constants():
    assert round(CONSTANTS.eta, 3) == 0.086
    assert CONSTANTS.alpha_star == pytest.approx(1 / math.log(2), abs=1e-15)
    assert round(CONSTANTS.c_brun, 2) == 3.59
    assert abs(arith.brun_equation(CONSTANTS.c_brun)) < 1e-12
    assert round(CONSTANTS.log_four_minus_one, 3) == 0.386


def test_brun_constant_against_mpmath():
    import mpmath
    c = mpmath.findroot(lambda c: c * (mpmath.log(c) - 1) - 1, 3.5)
    assert abs(float(c) - CONSTANTS.c_brun) < 1e-12
