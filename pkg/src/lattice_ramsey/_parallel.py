"""Order-preserving fan-out over worker processes."""
from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor


def ordered_map(fn, tasks, workers: int = 1) -> list:
    """``[fn(t) for t in tasks]``, optionally computed in a process pool.

    Results always come back in task order, so callers see the same output
    whatever the worker count.
    """
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks)), mp_context=ctx) as pool:
        return list(pool.map(fn, tasks))
