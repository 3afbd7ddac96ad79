"""Ordered thread-pool map with a progress bar."""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Sequence

from tqdm.auto import tqdm

logger = logging.getLogger(__name__)


def map_ordered(fn: Callable, items: Sequence, threads: int = 1,
                desc: str = None, progress: bool = True) -> List:
    """
    Apply ``fn`` to every item and return results in input order.

    With ``threads == 1`` the work runs inline. Otherwise items are
    submitted to a thread pool and collected as they complete; the first
    failure cancels the remaining work and is re-raised.
    """
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    results = [None] * len(items)
    if threads == 1 or len(items) <= 1:
        for i, item in enumerate(tqdm(items, desc=desc, disable=not progress)):
            results[i] = fn(item)
        return results

    with ThreadPoolExecutor(max_workers=threads) as executor:
        future_to_idx = {executor.submit(fn, item): i for i, item in enumerate(items)}
        for future in tqdm(as_completed(future_to_idx), total=len(items),
                           desc=desc, disable=not progress):
            idx = future_to_idx[future]
            try:
                results[idx] = future.result()
            except Exception:
                for other in future_to_idx:
                    other.cancel()
                logger.debug("work item %d failed; cancelling the rest", idx)
                raise
    return results
