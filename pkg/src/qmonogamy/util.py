"""Small shared helpers: ordered parallel map and stable float formatting."""

from __future__ import annotations

import concurrent.futures


def parallel_map(fn, items, threads: int = 1) -> list:
    """Map ``fn`` over ``items``, optionally across a process pool.

    Results come back in input order regardless of completion order, so
    parallelism is observationally invisible.  ``fn`` and the items must be
    picklable when threads > 1.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def fmt12(x: float) -> str:
    """Format a float with 12 significant digits (stable across platforms)."""
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.12g}"


def round12(obj):
    """Recursively round floats in a JSON-ready structure to 12 significant
    digits so serialized reports are byte-stable."""
    if isinstance(obj, float):
        return float(fmt12(obj))
    if isinstance(obj, dict):
        return {k: round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round12(v) for v in obj]
    return obj
