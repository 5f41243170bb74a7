"""Parallel evaluation of independent grid points, with results in input order."""

from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar
import logging
import os

import numpy as np

from quantum_sensing_simulator.settings.settings import Settings

logger = logging.getLogger(__name__)

Item = TypeVar("Item")
Result = TypeVar("Result")


def thread_count() -> Optional[int]:
    """Worker count from the thread-count environment variable, None for the executor default."""
    value = os.environ.get(Settings().get()["thread_count_variable"])
    if value is None:
        return None
    try:
        return max(1, int(value))
    except ValueError:
        logger.warning("ignoring non-integer thread count %r", value)
        return None


def ordered_map(fn: Callable[[Item], Result], items: Iterable[Item]) -> list[Result]:
    """Applies fn to every item on a thread pool. The first exception raised by any task propagates."""
    items = list(items)
    workers = thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))


def task_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    """One independent seed sequence per task index."""
    return np.random.SeedSequence(seed).spawn(count)
