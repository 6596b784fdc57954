"""Compiled hot loops. Every function mirrors one in ``_pykernels``.

The loops release the GIL, so callers may fan chunks out over a thread
pool. Output order depends only on the input rows, never on scheduling.
"""

from libc.stdint cimport uint8_t, uint32_t, uint64_t, int64_t

import numpy as np

cdef extern from *:
    """
    #include <stdint.h>
    #include <stdlib.h>

    typedef unsigned __int128 hyp_u128;

    /* Montgomery arithmetic modulo an odd n < 2^64, R = 2^64. */
    static inline uint64_t hyp_redc(hyp_u128 t, uint64_t n, uint64_t ninv) {
        uint64_t m = (uint64_t)t * ninv;
        hyp_u128 mn = (hyp_u128)m * n;
        uint64_t th = (uint64_t)(t >> 64), mh = (uint64_t)(mn >> 64);
        uint64_t r = th - mh;
        if (th < mh) r += n;
        return r;
    }

    static inline uint64_t hyp_mont_mul(uint64_t a, uint64_t b, uint64_t n, uint64_t ninv) {
        return hyp_redc((hyp_u128)a * b, n, ninv);
    }

    /* n^{-1} mod 2^64 by Newton iteration; n odd. */
    static inline uint64_t hyp_inv64(uint64_t n) {
        uint64_t x = n;
        for (int i = 0; i < 5; i++) x *= 2 - n * x;
        return x;
    }

    static int hyp_sprp(uint64_t n, uint64_t base, uint64_t d, int s,
                        uint64_t ninv, uint64_t one, uint64_t mone) {
        uint64_t b = base % n;
        if (b == 0) return 1;
        uint64_t x = (uint64_t)(((hyp_u128)b << 64) % n);
        uint64_t acc = one;
        uint64_t e = d;
        while (e) {
            if (e & 1) acc = hyp_mont_mul(acc, x, n, ninv);
            x = hyp_mont_mul(x, x, n, ninv);
            e >>= 1;
        }
        if (acc == one || acc == mone) return 1;
        for (int r = 1; r < s; r++) {
            acc = hyp_mont_mul(acc, acc, n, ninv);
            if (acc == mone) return 1;
            if (acc == one) return 0;
        }
        return 0;
    }

    static const uint64_t HYP_BASES[12] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

    /* Smallest n needing k+1 prime bases; see _pykernels.MR_BOUNDS. */
    static const uint64_t HYP_BOUNDS[8] = {
        2047ULL, 1373653ULL, 25326001ULL, 3215031751ULL, 2152302898747ULL,
        3474749660383ULL, 341550071728321ULL, 3825123056546413051ULL
    };

    static int hyp_is_prime_u64(uint64_t n) {
        static const uint32_t small[25] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
        if (n < 2) return 0;
        for (int i = 0; i < 25; i++) {
            if (n % small[i] == 0) return n == small[i];
        }
        if (n < 10201) return 1;
        uint64_t d = n - 1;
        int s = __builtin_ctzll(d);
        d >>= s;
        uint64_t ninv = hyp_inv64(n);
        uint64_t one = ((uint64_t)0 - n) % n;
        uint64_t mone = n - one;
        int nbases = 12;
        for (int k = 0; k < 8; k++) {
            if (n < HYP_BOUNDS[k]) { nbases = k + 1; break; }
        }
        if (nbases == 8) nbases = 9;
        for (int i = 0; i < nbases; i++) {
            if (!hyp_sprp(n, HYP_BASES[i], d, s, ninv, one, mone)) return 0;
        }
        return 1;
    }

    static inline uint64_t hyp_gcd(uint64_t a, uint64_t b) {
        if (a == 0) return b;
        if (b == 0) return a;
        int shift = __builtin_ctzll(a | b);
        a >>= __builtin_ctzll(a);
        do {
            b >>= __builtin_ctzll(b);
            if (a > b) { uint64_t t = a; a = b; b = t; }
            b -= a;
        } while (b);
        return a << shift;
    }

    /* Sum of two coprime squares: only 2 and primes 1 mod 4 can divide it.
       Literal divisors let the compiler replace division by multiplication. */
    static inline int hyp_norm_candidate(uint64_t m) {
        if (m % 2 == 0) return m == 2;
        if (m % 5 == 0) return m == 5;
        if (m % 13 == 0) return m == 13;
        if (m % 17 == 0) return m == 17;
        if (m % 29 == 0) return m == 29;
        if (m % 37 == 0) return m == 37;
        if (m % 41 == 0) return m == 41;
        if (m % 53 == 0) return m == 53;
        if (m % 61 == 0) return m == 61;
        if (m % 73 == 0) return m == 73;
        if (m % 89 == 0) return m == 89;
        if (m % 97 == 0) return m == 97;
        return 1;
    }

    typedef struct {
        uint32_t *a;
        uint32_t *b;
        size_t len, cap;
        int failed;
    } hyp_pairbuf;

    static inline void hyp_push(hyp_pairbuf *buf, uint32_t a, uint32_t b) {
        if (buf->failed) return;
        if (buf->len == buf->cap) {
            size_t cap = buf->cap ? 2 * buf->cap : 4096;
            uint32_t *na = (uint32_t *)realloc(buf->a, cap * sizeof(uint32_t));
            if (!na) { buf->failed = 1; return; }
            buf->a = na;
            uint32_t *nb = (uint32_t *)realloc(buf->b, cap * sizeof(uint32_t));
            if (!nb) { buf->failed = 1; return; }
            buf->b = nb;
            buf->cap = cap;
        }
        buf->a[buf->len] = a;
        buf->b[buf->len] = b;
        buf->len++;
    }

    static void hyp_free(hyp_pairbuf *buf) {
        free(buf->a);
        free(buf->b);
        buf->a = buf->b = NULL;
        buf->len = buf->cap = 0;
    }
    """
    bint hyp_is_prime_u64(uint64_t n) nogil
    uint64_t hyp_gcd(uint64_t a, uint64_t b) nogil
    bint hyp_norm_candidate(uint64_t m) nogil

    ctypedef struct hyp_pairbuf:
        uint32_t *a
        uint32_t *b
        size_t len
        size_t cap
        int failed
    void hyp_push(hyp_pairbuf *buf, uint32_t a, uint32_t b) nogil
    void hyp_free(hyp_pairbuf *buf) nogil


NAME = "compiled"


def is_prime(uint64_t n):
    return hyp_is_prime_u64(n)


def spf_fill(uint32_t[::1] spf, Py_ssize_t lo, Py_ssize_t hi, const uint32_t[::1] primes):
    cdef Py_ssize_t i, j, start
    cdef Py_ssize_t p
    with nogil:
        for i in range(primes.shape[0]):
            p = primes[i]
            if p * p >= hi:
                break
            start = ((lo + p - 1) // p) * p
            if start < p * p:
                start = p * p
            j = start
            while j < hi:
                if spf[j] == 0:
                    spf[j] = <uint32_t>p
                j += p
        for j in range(lo, hi):
            if spf[j] == 0:
                spf[j] = <uint32_t>j


def factor_tables(const uint32_t[::1] spf, uint8_t[::1] omega=None,
                  uint8_t[::1] big_omega=None, uint32_t[::1] lpf=None,
                  uint32_t[::1] ndiv=None):
    cdef Py_ssize_t size = spf.shape[0]
    cdef bint want_w = omega is not None
    cdef bint want_W = big_omega is not None
    cdef bint want_p = lpf is not None
    cdef bint want_d = ndiv is not None
    cdef uint8_t[::1] expo = np.zeros(size if want_d else 1, dtype=np.uint8)
    cdef Py_ssize_t n, m
    cdef uint32_t p
    cdef bint same
    if size < 2:
        return
    with nogil:
        if want_w:
            omega[1] = 0
        if want_W:
            big_omega[1] = 0
        if want_p:
            lpf[1] = 1
        if want_d:
            ndiv[1] = 1
        for n in range(2, size):
            p = spf[n]
            m = n // p
            same = m > 1 and spf[m] == p
            if want_w:
                omega[n] = omega[m] if same else omega[m] + 1
            if want_W:
                big_omega[n] = big_omega[m] + 1
            if want_p:
                lpf[n] = lpf[m] if lpf[m] > p else p
            if want_d:
                if same:
                    expo[n] = expo[m] + 1
                    ndiv[n] = ndiv[m] // (expo[m] + 1) * (expo[n] + 1)
                else:
                    expo[n] = 1
                    ndiv[n] = 2 * ndiv[m]


def scan_rows(const int64_t[::1] a_arr, const int64_t[::1] blo_arr,
              const int64_t[::1] bhi_arr, int step, bint halve, bint collect):
    """Count (and optionally collect) pairs whose norm is prime.

    Row r covers a = a_arr[r] and b = blo_arr[r], blo_arr[r] + step, ...
    up to bhi_arr[r]. The tested value is a^2 + b^2, halved if ``halve``.
    Pairs with gcd(a, b) > 1 are skipped.
    """
    cdef Py_ssize_t r, nrows = a_arr.shape[0]
    cdef int64_t b, bhi
    cdef uint64_t a, a2, m
    cdef int64_t count = 0
    cdef hyp_pairbuf buf
    buf.a = NULL
    buf.b = NULL
    buf.len = 0
    buf.cap = 0
    buf.failed = 0
    with nogil:
        for r in range(nrows):
            a = <uint64_t>a_arr[r]
            a2 = a * a
            b = blo_arr[r]
            bhi = bhi_arr[r]
            while b <= bhi:
                if hyp_gcd(a, <uint64_t>b) == 1:
                    m = a2 + <uint64_t>b * <uint64_t>b
                    if halve:
                        m >>= 1
                    if hyp_norm_candidate(m) and hyp_is_prime_u64(m):
                        count += 1
                        if collect:
                            hyp_push(&buf, <uint32_t>a, <uint32_t>b)
                b += step
    if buf.failed:
        hyp_free(&buf)
        raise MemoryError("pair buffer allocation failed")
    cdef Py_ssize_t k, size = buf.len
    out_a = np.empty(size, dtype=np.uint32)
    out_b = np.empty(size, dtype=np.uint32)
    cdef uint32_t[::1] va = out_a
    cdef uint32_t[::1] vb = out_b
    for k in range(size):
        va[k] = buf.a[k]
        vb[k] = buf.b[k]
    hyp_free(&buf)
    return count, out_a, out_b
