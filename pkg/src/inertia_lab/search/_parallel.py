"""Ordered task execution with an optional thread pool.

Tasks are run in waves of ``threads`` consecutive indices. After each wave
the results are inspected in index order, so early stopping picks the same
task whether the run is serial or parallel. The compiled kernels release
the GIL, which is where threads pay off.
"""
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, TypeVar

T = TypeVar("T")


def thread_count(requested: Optional[int] = None) -> int:
    """Resolve the worker count; ``INERTIA_LAB_THREADS=0`` (or unset) means auto."""
    if requested is None:
        raw = os.environ.get("INERTIA_LAB_THREADS", "0").strip() or "0"
        try:
            requested = int(raw)
        except ValueError:
            raise ValueError(f"INERTIA_LAB_THREADS must be an integer, got {raw!r}") from None
    if requested < 0:
        raise ValueError("thread count must be nonnegative")
    if requested == 0:
        requested = os.cpu_count() or 1
    return max(1, requested)


def run_ordered(
    fn: Callable[[int], T],
    count: int,
    stop: Optional[Callable[[T], bool]] = None,
    threads: Optional[int] = None,
) -> List[T]:
    """Evaluate ``fn(0), fn(1), ...`` and return results in index order.

    When ``stop`` is given, evaluation ends after the first result (in index
    order) for which it returns True; later results are discarded.
    """
    workers = thread_count(threads)
    out: List[T] = []
    if workers == 1:
        for i in range(count):
            res = fn(i)
            out.append(res)
            if stop is not None and stop(res):
                break
        return out
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for start in range(0, count, workers):
            wave = list(pool.map(fn, range(start, min(start + workers, count))))
            for res in wave:
                out.append(res)
                if stop is not None and stop(res):
                    return out
    return out
