import math

import numpy as np
import pytest

from hypotenuse import stats
from hypotenuse.arith import CONSTANTS

import oracles


def test_histogram_small():
    h = stats.omega_histogram(100)
    assert h[1] == 35
    assert h[0] == 1
    assert h.counts.sum() == 100


def test_histogram_matches_oracle():
    N = 10**4
    h = stats.omega_histogram(N)
    ref = np.bincount([oracles.omega_td(n) for n in range(1, N + 1)])
    assert np.array_equal(h.counts, ref)


def test_hr_ratios():
    h = stats.omega_histogram(10**6)
    r1 = stats.hr_normalized_ratio(h, 1.0)
    r2 = stats.hr_normalized_ratio(h, 2.0)
    assert all(v > 0 for v in r1.values())
    assert all(r2[i] <= r1[i] for i in r1)
    assert math.isfinite(max(r1.values()))
    with pytest.raises(ValueError):
        stats.hr_normalized_ratio(h, 0.0)


def test_prime_power_sums():
    total, _ = stats.prime_power_reciprocal_sum(10)
    assert total == pytest.approx(1 / 2 + 1 / 3 + 1 / 4 + 1 / 5 + 1 / 7 + 1 / 8 + 1 / 9, abs=1e-15)
    assert stats.prime_power_reciprocal_sum(3)[0] == pytest.approx(5 / 6, abs=1e-15)
    ref = sum(1 / q for q in range(2, 2001) if len(oracles.factorize_td(q)) == 1)
    assert stats.prime_power_reciprocal_sum(2000)[0] == pytest.approx(ref, rel=1e-13)


def test_prime_power_increments():
    pp = set(stats.prime_powers_upto(300).tolist())
    prev = None
    for n in range(3, 301):
        s = stats.prime_power_reciprocal_sum(n)[0]
        if prev is not None:
            assert s == pytest.approx(prev + (1 / n if n in pp else 0), abs=1e-14)
        prev = s


def test_gap_bounded_on_grid():
    series = stats.prime_power_reciprocal_series([10**k for k in range(1, 8)])
    gaps = [g for _, _, g in series]
    assert all(0 < g < 2 for g in gaps)


def test_exceptional_sets_small():
    r = stats.exceptional_sets(100, 1 / math.log(2))
    assert r.L == 2
    # oracle: exhaustive omega scan
    assert r.e1_size == sum(1 for n in range(1, 101) if oracles.omega_td(n) > 2) == 8
    assert r.smooth_threshold == pytest.approx(20.3988, abs=1e-4)
    assert r.e2_size == sum(1 for n in range(1, 101) if oracles.lpf_td(n) <= 20) == 72
    assert r.e1_size + r.e2_size <= 200
    with pytest.raises(ValueError):
        stats.exceptional_sets(100, 2.0)


def test_exceptional_monotone_in_alpha():
    sizes = [stats.exceptional_sets(10**5, a).e1_size for a in np.linspace(1.01, 1.99, 30)]
    assert all(x >= y for x, y in zip(sizes, sizes[1:]))


def test_m_of_alpha():
    assert stats.m_of_alpha(1 / math.log(2)) == pytest.approx(CONSTANTS.eta, abs=1e-12)
    assert stats.m_of_alpha(1.0) == 0.0
    a, _ = stats.best_alpha()
    assert abs(a - 1 / math.log(2)) < 1e-3
    b1, _, b3 = stats.m_branches(CONSTANTS.alpha_star)
    assert abs(b1 - b3) < 1e-12


def test_divisor_heuristic():
    s = stats.divisor_heuristic(10**6)
    assert s.q1 <= s.median <= s.q3
    assert s.reference == math.log(2)


def test_divisor_counts_by_pairs():
    from hypotenuse import sieve
    fs = sieve.build(3000)
    ndiv = fs.tables("ndiv")
    for n in range(1, 3001):
        pairs = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0 and d * d < n]
        assert ndiv[n] == 2 * len(pairs) + (math.isqrt(n) ** 2 == n)
