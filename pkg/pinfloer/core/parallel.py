"""
Order-preserving parallel map capped by PINFLOER_THREADS
"""
import logging
from typing import Callable, Iterable, List, Optional, TypeVar

from joblib import Parallel, delayed

from pinfloer.core.config import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def thread_count(n_jobs: Optional[int] = None) -> int:
    """Effective worker count, never above the configured cap"""
    cap = get_settings().PINFLOER_THREADS
    return max(1, min(cap, n_jobs)) if n_jobs else cap


def parallel_map(function: Callable[[T], R], inputs: Iterable[T], n_jobs: Optional[int] = None) -> List[R]:
    """
    Apply function to every input, returning results in input order.

    Args:
        function: pure function of one argument
        inputs: work items
        n_jobs: optional lower cap on the worker count

    Returns:
        list of results, ordered like inputs
    """
    items = list(inputs)
    jobs = thread_count(n_jobs)
    if jobs == 1 or len(items) < 2:
        return [function(item) for item in items]
    logger.debug(f"parallel_map over {len(items)} items with {jobs} threads")
    return Parallel(n_jobs=jobs, backend="threading")(delayed(function)(item) for item in items)


def chunked(items: List[T], chunks: int) -> List[List[T]]:
    """Split items into at most `chunks` contiguous slices"""
    if not items:
        return []
    chunks = max(1, min(chunks, len(items)))
    size = -(-len(items) // chunks)
    return [items[i:i + size] for i in range(0, len(items), size)]
