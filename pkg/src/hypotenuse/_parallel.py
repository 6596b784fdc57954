"""Deterministic fan-out of row scans over a thread pool.

Work is split into chunks by a rule that depends only on the input, and
results are concatenated in chunk order, so the worker count never
changes the output.
"""
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ._backend import kernels

SEGMENT = 1 << 16
TARGET_CHUNKS = 64


def map_ordered(fn, items, workers=1):
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def split_rows(a, blo, bhi, step):
    """Cut rows longer than ``SEGMENT`` b-values into consecutive pieces."""
    a = np.asarray(a, dtype=np.int64)
    blo = np.asarray(blo, dtype=np.int64)
    bhi = np.asarray(bhi, dtype=np.int64)
    length = np.where(bhi >= blo, (bhi - blo) // step + 1, 0)
    live = length > 0
    a, blo, bhi, length = a[live], blo[live], bhi[live], length[live]
    pieces = -(-length // SEGMENT)
    row = np.repeat(np.arange(a.size), pieces)
    first = np.cumsum(pieces) - pieces
    k = np.arange(row.size) - np.repeat(first, pieces)
    lo = blo[row] + k * SEGMENT * step
    hi = np.minimum(bhi[row], lo + (SEGMENT - 1) * step)
    return a[row], lo, hi, (hi - lo) // step + 1


def plan_chunks(a, blo, bhi, step):
    """Group row pieces into about ``TARGET_CHUNKS`` chunks of similar work."""
    a, lo, hi, work = split_rows(a, blo, bhi, step)
    if a.size == 0:
        return []
    total = int(work.sum())
    cuts = np.searchsorted(np.cumsum(work), np.linspace(0, total, TARGET_CHUNKS + 1)[1:-1],
                           side="right")
    bounds = np.unique(np.concatenate(([0], cuts, [a.size])))
    return [(a[s:e], lo[s:e], hi[s:e]) for s, e in zip(bounds[:-1], bounds[1:]) if e > s]


def scan(a, blo, bhi, *, step=1, halve=False, collect=True, workers=1):
    """Run the active ``scan_rows`` kernel over the rows, in parallel.

    Returns ``(count, a_out, b_out)`` with pairs in row order.
    """
    k = kernels()
    chunks = plan_chunks(a, blo, bhi, step)

    def run(chunk):
        ca, clo, chi = chunk
        return k.scan_rows(np.ascontiguousarray(ca), np.ascontiguousarray(clo),
                           np.ascontiguousarray(chi), step, halve, collect)

    results = map_ordered(run, chunks, workers)
    count = sum(r[0] for r in results)
    if not collect or not results:
        empty = np.empty(0, dtype=np.uint32)
        return count, empty, empty
    return (count, np.concatenate([r[1] for r in results]),
            np.concatenate([r[2] for r in results]))
