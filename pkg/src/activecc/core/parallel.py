"""
Seed splitting and order-preserving fan-out for independent runs.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar, Union

import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

SeedSource = Union[None, int, np.random.SeedSequence, np.random.Generator]


def seed_sequence(seed: SeedSource) -> np.random.SeedSequence:
    """Normalize any seed source to a SeedSequence."""
    if isinstance(seed, np.random.SeedSequence):
        return seed
    if isinstance(seed, np.random.Generator):
        return np.random.SeedSequence(int(seed.integers(2**63)))
    return np.random.SeedSequence(seed)


def spawn_seeds(seed: SeedSource, count: int) -> List[np.random.SeedSequence]:
    """Independent child seeds; child i depends only on (seed, i)."""
    return seed_sequence(seed).spawn(count)


def ordered_map(fn: Callable[[T], R], items: Iterable[T], max_workers: int = 1) -> List[R]:
    """Map fn over items, serially or in a process pool; results keep input order."""
    items = list(items)
    if max_workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug(f"Running {len(items)} tasks on {max_workers} processes")
    with ProcessPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(fn, items))
