import concurrent.futures
import logging

logger = logging.getLogger(__name__)


def ordered_map(func, items, workers=1):
    """Apply ``func`` to every item; results come back in input order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    results = [None] * len(items)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as ex:
        futs = {ex.submit(func, item): index for index, item in enumerate(items)}
        for fut in concurrent.futures.as_completed(futs):
            results[futs[fut]] = fut.result()

    logger.debug("ran %d tasks on %d workers", len(items), workers)
    return results
