"""Deterministic fan-out of pure function evaluations over worker processes."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

ENV_JOBS = "DEPHASER_JOBS"


def resolve_jobs(jobs: int | None = None) -> int:
    """Worker count: explicit argument, then the DEPHASER_JOBS environment
    variable, then the machine's CPU count."""
    if jobs is None:
        env = os.environ.get(ENV_JOBS)
        if env is not None:
            try:
                jobs = int(env)
            except ValueError:
                raise ValueError(f"{ENV_JOBS} must be an integer, got {env!r}") from None
        else:
            return os.cpu_count() or 1
    if jobs < 1:
        raise ValueError(f"job count must be at least 1, got {jobs}")
    return jobs


def ordered_map(fn, items, jobs: int | None = 1):
    """Map ``fn`` over ``items``, preserving input order in the result.

    With one worker this is a plain loop; otherwise a process pool evaluates
    the items and the results are assembled in submission order regardless of
    completion order, so output never depends on the worker count.  ``fn``
    and the items must be picklable when jobs > 1.
    """
    items = list(items)
    n = resolve_jobs(jobs)
    if n == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    chunk = max(1, len(items) // (4 * n))
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
