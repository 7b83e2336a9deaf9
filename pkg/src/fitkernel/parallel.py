"""Internal parallelism knob.

FITKERNEL_THREADS bounds the worker count used for independent minor
determinants.  Evaluation order is fixed and results are merged by minor
index, so output is identical for any thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("FITKERNEL_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(f"FITKERNEL_THREADS must be an integer, got {raw!r}") from exc
    return max(1, n)


def ordered_map(fn, items):
    """Map preserving order, using up to FITKERNEL_THREADS workers."""
    n = thread_count()
    items = list(items)
    if n == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
