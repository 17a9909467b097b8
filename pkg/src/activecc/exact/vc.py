"""
Brute-force VC dimension of the class {h_C : C a partition of n nodes},
where h_C(u, v) = +1 iff u and v share a cluster.
"""

import logging
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config.settings import Settings, get_settings
from ..errors import ParameterError
from .partitions import iter_partitions

logger = logging.getLogger(__name__)


def pair_list(n: int) -> List[Tuple[int, int]]:
    return list(combinations(range(n), 2))


def hypothesis_table(n: int) -> np.ndarray:
    """Boolean (partitions x pairs) table of h_C(u, v) = +1."""
    partitions = np.array(list(iter_partitions(n)), dtype=np.int64).reshape(-1, n)
    pairs = np.array(pair_list(n), dtype=np.int64).reshape(-1, 2)
    return partitions[:, pairs[:, 0]] == partitions[:, pairs[:, 1]]


def is_shattered(table: np.ndarray, columns: Sequence[int]) -> bool:
    """Every +-1 labeling of the given pairs is realized by some partition."""
    columns = list(columns)
    k = len(columns)
    if k == 0:
        return True
    weights = np.left_shift(np.int64(1), np.arange(k, dtype=np.int64))
    codes = table[:, columns].astype(np.int64) @ weights
    return np.unique(codes).size == 2**k


def vc_shattering_check(n: int, settings: Optional[Settings] = None) -> int:
    """
    Largest shattered set of pairs for partitions of n nodes.

    Verifies that the path 0-1-...-(n-1), a spanning tree, is shattered, then
    searches subsets of increasing size until no subset of that size is
    shattered (shattering is closed under taking subsets).
    """
    settings = settings or get_settings()
    if n < 3:
        raise ParameterError(f"the shattering check needs n >= 3, got {n}")
    settings.check_capacity("vc_shattering_check", n, "vc_max_nodes")

    table = hypothesis_table(n)
    index = {pair: i for i, pair in enumerate(pair_list(n))}
    tree = [index[(i, i + 1)] for i in range(n - 1)]
    if not is_shattered(table, tree):
        raise AssertionError(f"spanning path on {n} nodes is not shattered")

    largest = n - 1
    for k in range(n, len(index) + 1):
        witness = next(
            (cols for cols in combinations(range(len(index)), k) if is_shattered(table, cols)),
            None,
        )
        if witness is None:
            break
        largest = k
    logger.info(f"VC dimension of partitions on {n} nodes: {largest}")
    return largest
