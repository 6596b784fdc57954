"""Pure-Python kernels (numpy-vectorised where it pays).

Same signatures and outputs as the compiled ``_ckernels`` module, which is
preferred when it imports.
"""
import numpy as np

NAME = "python"

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

# (bound, k): every odd composite n < bound fails a strong-probable-prime
# test to one of the first k prime bases. Bounds are the published psi_k
# values (PSW 1980, Jaeschke 1993, Jiang-Deng
# 2014). Past the last bound all twelve bases 2..37 are used, which is
# proven for n < 3.18e23 (Sorenson-Webster 2015), covering all of 2^64.
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_BOUNDS = (
    (2047, 1),
    (1373653, 2),
    (25326001, 3),
    (3215031751, 4),
    (2152302898747, 5),
    (3474749660383, 6),
    (341550071728321, 7),
    (3825123056546413051, 9),
)

# Primes that can divide a sum of two coprime squares below 100.
NORM_FILTER = (2, 5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97)

_ROW_BLOCK = 1 << 18


def _bases_for(n):
    for bound, k in MR_BOUNDS:
        if n < bound:
            return MR_BASES[:k]
    return MR_BASES


def _strong_probable_prime(n):
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _bases_for(n):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n):
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 10201:
        return True
    return _strong_probable_prime(n)


def spf_fill(spf, lo, hi, primes):
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        view = spf[start:hi:p]
        view[view == 0] = p
    seg = spf[lo:hi]
    empty = np.flatnonzero(seg == 0)
    seg[empty] = (empty + lo).astype(spf.dtype)


def factor_tables(spf, omega=None, big_omega=None, lpf=None, ndiv=None):
    size = spf.shape[0]
    if size < 2:
        return
    if omega is not None:
        omega[1] = 0
    if big_omega is not None:
        big_omega[1] = 0
    if lpf is not None:
        lpf[1] = 1
    expo = None
    if ndiv is not None:
        ndiv[1] = 1
        expo = np.zeros(size, dtype=np.uint8)
    # n // spf(n) <= n // 2, so each doubling block only reads earlier blocks.
    lo = 2
    while lo < size:
        hi = min(2 * lo, size)
        n = np.arange(lo, hi, dtype=np.int64)
        p = spf[lo:hi].astype(np.int64)
        m = n // p
        same = (m > 1) & (spf[m] == p)
        if omega is not None:
            omega[lo:hi] = omega[m] + (~same).astype(np.uint8)
        if big_omega is not None:
            big_omega[lo:hi] = big_omega[m] + 1
        if lpf is not None:
            lpf[lo:hi] = np.maximum(lpf[m], p)
        if ndiv is not None:
            em = expo[m].astype(np.uint32)
            en = np.where(same, em + 1, 1)
            expo[lo:hi] = en
            dm = ndiv[m]
            ndiv[lo:hi] = np.where(same, dm // (em + 1) * (en + 1), 2 * dm)
        lo = hi


def _norm_survivors(a, b, halve):
    """Indices into ``b`` that pass the coprimality and small-prime filters."""
    keep = np.gcd(b, a) == 1
    m = np.uint64(a) * np.uint64(a) + b.astype(np.uint64) ** 2
    if halve:
        m >>= np.uint64(1)
    for p in NORM_FILTER:
        up = np.uint64(p)
        keep &= (m % up != 0) | (m == up)
    idx = np.flatnonzero(keep)
    return idx, m[idx]


def scan_rows(a_arr, blo_arr, bhi_arr, step, halve, collect):
    count = 0
    out_a, out_b = [], []
    for a, blo, bhi in zip(a_arr.tolist(), blo_arr.tolist(), bhi_arr.tolist()):
        for start in range(blo, bhi + 1, step * _ROW_BLOCK):
            stop = min(bhi + 1, start + step * _ROW_BLOCK)
            b = np.arange(start, stop, step, dtype=np.int64)
            idx, m = _norm_survivors(a, b, halve)
            hits = [i for i, v in zip(idx.tolist(), m.tolist()) if is_prime(v)]
            count += len(hits)
            if collect and hits:
                out_b.append(b[hits])
                out_a.append(np.full(len(hits), a, dtype=np.uint32))
    if out_a:
        return count, np.concatenate(out_a), np.concatenate(out_b).astype(np.uint32)
    return count, np.empty(0, dtype=np.uint32), np.empty(0, dtype=np.uint32)
