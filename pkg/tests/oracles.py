"""Brute-force reference implementations.

Nothing here imports the package: every function is plain loops and
trial division, slow but obviously correct.
"""
import math
from collections import Counter


def is_prime_td(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_list(n):
    return [p for p in range(2, n + 1) if is_prime_td(p)]


def factorize_td(n):
    out = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def omega_td(n):
    return len(factorize_td(n))


def big_omega_td(n):
    return sum(factorize_td(n).values())


def lpf_td(n):
    return max(factorize_td(n), default=1)


def ndiv_td(n):
    return sum(2 - (d * d == n) for d in range(1, math.isqrt(n) + 1) if n % d == 0)


def product_pairs(n):
    """Ordered (a, b) with ab = n and a^2 + b^2 prime, by divisor pairs."""
    return [(d, n // d) for d in range(1, n + 1)
            if n % d == 0 and is_prime_td(d * d + (n // d) ** 2)]


def has_product_pair(n):
    """Whether n = ab with a^2 + b^2 prime, scanning divisor pairs a <= sqrt(n)."""
    return any(n % d == 0 and is_prime_td(d * d + (n // d) ** 2)
               for d in range(1, math.isqrt(n) + 1))


def product_set(N):
    """C(N) members: n in (1, N] with some ab = n, a^2 + b^2 prime."""
    return [n for n in range(2, N + 1) if has_product_pair(n)]


def odd_legs(N):
    """Odd legs x^2 - y^2 <= N of triangles with prime hypotenuse x^2 + y^2."""
    out = set()
    x = 1
    while 2 * x - 1 <= N:
        for y in range(1, x):
            leg = x * x - y * y
            if leg <= N and is_prime_td(x * x + y * y):
                out.add(leg)
        x += 1
    return sorted(v for v in out if v % 2)


def even_legs(N):
    out = set()
    for x in range(1, N + 1):
        for y in range(1, N // (2 * x) + 1):
            if is_prime_td(x * x + y * y) and (x * x + y * y) % 2:
                out.add(2 * x * y)
    return sorted(out)


def pi_4_1(X):
    """#{p <= X : p prime, p = 1 mod 4}."""
    return sum(1 for p in range(5, X + 1, 4) if is_prime_td(p))


def gaussian_points(X, lo, hi):
    """(a, b) with a, b >= 1, a^2 + b^2 <= X prime and lo <= atan2(b, a) < hi."""
    out = []
    for a in range(1, math.isqrt(X) + 1):
        for b in range(1, math.isqrt(X - a * a) + 1):
            t = math.atan2(b, a)
            if lo <= t < hi and is_prime_td(a * a + b * b):
                out.append((a, b))
    return out


def quadruple_count(pairs):
    """#{(p, q) in pairs^2 : prod(p) = prod(q)}, by grouping on the product."""
    counts = Counter(a * b for a, b in pairs)
    return sum(c * c for c in counts.values())


def quadruple_count_slow(pairs):
    return sum(1 for a, b in pairs for c, d in pairs if a * b == c * d)


def brun_divisible_count(a, b0, X, d):
    return sum(1 for m in range(1, X + 1) if (m * (a * a + b0 * b0 * m * m)) % d == 0)


def brun_local_count(a, b0, p):
    return sum(1 for m in range(p) if (m * (a * a + b0 * b0 * m * m)) % p == 0)
