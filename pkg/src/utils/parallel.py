from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Tuple, TypeVar

T = TypeVar('T')


def split_range(total: int, parts: int) -> List[Tuple[int, int]]:
    """Split ``range(total)`` into at most ``parts`` contiguous half-open chunks."""
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    chunks = []
    start = 0
    for index in range(parts):
        stop = start + step + (1 if index < extra else 0)
        chunks.append((start, stop))
        start = stop
    return chunks


def map_ranges(func: Callable[[int, int], T], total: int, workers: int = 1) -> List[T]:
    """
    Apply ``func(lo, hi)`` to chunks of ``range(total)``.

    Results come back in chunk order whatever the worker count.
    """
    chunks = split_range(total, workers)
    if workers <= 1 or len(chunks) == 1:
        return [func(lo, hi) for lo, hi in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda chunk: func(*chunk), chunks))


def parallel_sum(func: Callable[[int, int], int], total: int, workers: int = 1) -> int:
    return sum(map_ranges(func, total, workers))
