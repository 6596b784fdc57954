"""Compare the compiled and pure-Python kernels on the hot paths.

Usage: python3 benchmarks/bench_backends.py [--limit 10^6] [--repeat 3]
"""
import argparse
import time

import numpy as np

from hypotenuse import _backend, legset, sieve
from hypotenuse.arith import is_prime
from hypotenuse.cli import parse_int


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def workloads(limit):
    rng = np.random.default_rng(0)
    big = [int(v) for v in rng.integers(1 << 62, 1 << 63, size=20_000, dtype=np.uint64)]

    def primality():
        return sum(is_prime(n) for n in big)

    def spf():
        s = sieve.build(limit)
        return int(s.spf[limit])

    def tables():
        s = sieve.build(limit)
        return int(s.tables("omega", "lpf", "ndiv")[0].sum())

    def pairs():
        return int(legset.admissible_pairs(legset.LegKind.PRODUCT, limit)[0].size)

    return {
        "is_prime x 20000 (63-bit)": primality,
        f"spf sieve to {limit:.0e}": spf,
        f"sieve + factor tables to {limit:.0e}": tables,
        f"product pairs to {limit:.0e}": pairs,
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--limit", type=parse_int, default=10**6)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    names = _backend.available()
    print(f"{'workload':<36}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, fn in workloads(args.limit).items():
        secs, results = [], []
        for name in names:
            with _backend.using(name):
                s, r = best_of(fn, args.repeat)
            secs.append(s)
            results.append(r)
        assert len(set(results)) == 1, f"backends disagree on {label}"
        speed = secs[names.index("python")] / secs[0] if len(names) > 1 else 1.0
        print(f"{label:<36}" + "".join(f"{s:>11.3f}s" for s in secs) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
