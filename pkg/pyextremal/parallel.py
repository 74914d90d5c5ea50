"""Deterministic fan-out of independent search branches."""

import logging
from multiprocessing import Pool
from typing import Any, Callable, Iterable, List

logger = logging.getLogger(__name__)


def apply_pool(func: Callable[..., Any], arguments: Iterable, workers: int = 1) -> List[Any]:
    """Apply ``func`` to every argument tuple, preserving argument order.

    Results come back in the order of ``arguments`` whatever the worker count,
    so callers that merge by branch index get the sequential answer.

    Args:
        func: Module-level callable (it is pickled when ``workers > 1``)
        arguments: Iterable of argument tuples (bare values are wrapped)
        workers: Number of processes; 1 or less runs in-process

    Returns:
        List of results, one per argument
    """
    arguments = [arg if isinstance(arg, tuple) else (arg,) for arg in arguments]
    if workers <= 1 or len(arguments) <= 1:
        return [func(*arg) for arg in arguments]
    processes = min(workers, len(arguments))
    logger.debug(f"Fanning out {len(arguments)} branches over {processes} processes")
    with Pool(processes=processes) as pool:
        return pool.starmap(func, arguments)
