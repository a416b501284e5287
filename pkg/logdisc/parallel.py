"""Order-preserving map over a worker pool sized by LOGDISC_THREADS."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from logdisc.config import thread_count

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T]) -> list[R]:
    work = list(items)
    workers = min(thread_count(), len(work))
    if workers <= 1:
        return [func(item) for item in work]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, work))
