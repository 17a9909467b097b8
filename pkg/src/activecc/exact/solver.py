"""
Exact OPT and the ERM-on-sampled-pairs scheme, at desk scale.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from ..config.settings import Settings, get_settings
from ..core.clustering import Clustering
from ..core.instance import LabeledInstance, SeedLike, make_rng
from ..core.oracle import QueryOracle
from ..errors import ParameterError
from .partitions import bell_number, min_disagreement_partition

logger = logging.getLogger(__name__)


def exact_opt(
    instance: LabeledInstance, settings: Optional[Settings] = None
) -> Tuple[int, Clustering]:
    """
    OPT = min over all partitions of the disagreement count.

    Returns the optimum and the lexicographically first optimal partition in
    restricted-growth order.
    """
    settings = settings or get_settings()
    settings.check_capacity("exact_opt", instance.n, "exact_max_nodes")
    pos = instance.matrix.astype(np.int64)
    neg = 1 - pos
    np.fill_diagonal(neg, 0)
    logger.debug(f"exact_opt: n={instance.n}, up to {bell_number(instance.n)} partitions")
    opt, rgs = min_disagreement_partition(pos, neg)
    return opt, Clustering.from_labels(rgs)


def sample_pairs(n: int, count: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """count unordered pairs of distinct nodes, uniform with replacement."""
    u = rng.integers(n, size=count)
    v = rng.integers(n - 1, size=count)
    v += v >= u
    return u, v


def erm_cc(
    oracle: QueryOracle, Q: int, seed: SeedLike = None, settings: Optional[Settings] = None
) -> Clustering:
    """
    Query Q pairs drawn uniformly with replacement and return the partition
    with the fewest disagreements on that multiset (first in RGS order on ties).
    """
    settings = settings or get_settings()
    n = oracle.n
    settings.check_capacity("erm_cc", n, "exact_max_nodes")
    if Q < 1:
        raise ParameterError(f"ERM needs Q >= 1 sampled pairs, got {Q}")
    if n < 2:
        return Clustering.singletons(n)

    u, v = sample_pairs(n, Q, make_rng(seed))
    labels = oracle.query_pairs(u, v)

    pos = np.zeros((n, n), dtype=np.int64)
    neg = np.zeros((n, n), dtype=np.int64)
    plus = labels > 0
    np.add.at(pos, (u[plus], v[plus]), 1)
    np.add.at(neg, (u[~plus], v[~plus]), 1)
    pos += pos.T
    neg += neg.T

    empirical, rgs = min_disagreement_partition(pos, neg)
    logger.debug(f"erm_cc: n={n}, Q={Q}, empirical disagreements={empirical}")
    return Clustering.from_labels(rgs)
