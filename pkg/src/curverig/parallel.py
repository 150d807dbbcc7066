"""Deterministic chunked parallelism.

Work is split into chunks whose boundaries do not depend on the worker
count, chunks may run concurrently, and results are merged in chunk order,
so outputs are identical for any `threads` value.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable


def chunk_ranges(n_items: int, chunk_size: int) -> list[tuple[int, int]]:
    if n_items <= 0:
        return []
    chunk_size = max(1, chunk_size)
    return [(i, min(i + chunk_size, n_items))
            for i in range(0, n_items, chunk_size)]


def parallel_chunked(worker: Callable, n_items: int, threads: int = 1,
                     chunk_size: int = 64) -> list:
    """Apply worker(start, stop) over fixed chunks; concatenate in order.

    worker returns a list; the flattened list is identical regardless of
    the thread count.
    """
    ranges = chunk_ranges(n_items, chunk_size)
    if threads <= 1 or len(ranges) <= 1:
        out = []
        for a, b in ranges:
            out.extend(worker(a, b))
        return out
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda r: worker(*r), ranges))
    out = []
    for part in parts:
        out.extend(part)
    return out
