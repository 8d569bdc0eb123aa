"""Worker-pool helpers shared by scans, ensembles and oracle runs."""
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

T = TypeVar('T')
R = TypeVar('R')


def worker_count(requested: Optional[int] = None) -> int:
    """
    Number of workers to use. ``requested`` (or PDCNET_THREADS when None)
    of 0 or less means one per CPU.
    """
    if requested is None:
        raw = os.getenv('PDCNET_THREADS', '0').strip() or '0'
        try:
            requested = int(raw)
        except ValueError:
            raise ValueError(f"PDCNET_THREADS must be an integer, got '{raw}'") from None
    if requested <= 0:
        return os.cpu_count() or 1
    return requested


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> list[R]:
    """Apply ``func`` concurrently; results come back in input order."""
    items = list(items)
    count = min(worker_count(workers), max(len(items), 1))
    if count == 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(func, items))
