"""
Ordered parallel map used by the per-feature scans and oracle enumerations.

Results always come back in input order, so any reduction done over them by
the caller is deterministic regardless of the thread count.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from src.config.settings import settings

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: Optional[int] = None) -> int:
    """Thread count to use: explicit argument, else settings (XKM_THREADS)."""
    value = settings.threads if threads is None else threads
    return max(1, int(value))


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """Apply `fn` to every item, preserving input order in the result list."""
    items = list(items)
    workers = min(resolve_threads(threads), max(1, len(items)))
    if workers == 1:
        return [fn(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
