"""Small execution helpers."""

from __future__ import annotations

import os

_WORK = None


def _invoke(x):
    return _WORK(x)


def parallel_map(fn, items, jobs=1):
    """Map fn over items, optionally fanning out over forked workers.

    Results come back in input order, so exact computations merge
    deterministically.  The callable is inherited by the forked children, so
    closures over groups and frames are fine; item and result values must be
    picklable.  jobs <= 1 (or a platform without fork) degrades to a plain loop.
    """
    global _WORK
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    try:
        import multiprocessing

        ctx = multiprocessing.get_context("fork")
    except (ImportError, ValueError):
        return [fn(x) for x in items]
    jobs = min(jobs, len(items), os.cpu_count() or 1)
    if jobs <= 1:
        return [fn(x) for x in items]
    _WORK = fn
    try:
        with ctx.Pool(jobs) as pool:
            return pool.map(_invoke, items, chunksize=max(1, len(items) // (4 * jobs)))
    finally:
        _WORK = None
