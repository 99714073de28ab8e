"""
utils/parallel.py — Worker pool for the pure enumeration kernels.

Kernels are top-level functions (picklable) that map one chunk of work to a
partial tally; callers merge the partial results in chunk order, so the
outcome never depends on the worker count.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def split_range(n: int, parts: int) -> List[range]:
    """Split ``range(n)`` into at most ``parts`` contiguous, ordered ranges."""
    parts = max(1, min(parts, n)) if n > 0 else 1
    step, extra = divmod(n, parts)
    chunks, start = [], 0
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0)
        chunks.append(range(start, stop))
        start = stop
    return chunks


def map_chunks(kernel: Callable[[T], R], chunks: Sequence[T], workers: int = 1) -> List[R]:
    """
    Apply ``kernel`` to every chunk, preserving chunk order in the result.

    With ``workers <= 1`` (or a single chunk) everything runs in-process,
    which keeps tests and small inputs free of process start-up cost.
    """
    if workers <= 1 or len(chunks) <= 1:
        return [kernel(chunk) for chunk in chunks]

    logger.debug("Dispatching %d chunks to %d worker processes.", len(chunks), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(kernel, chunks))
