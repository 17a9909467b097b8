"""
ACR: amplified cluster recovery.

K independent ACC runs, each tagging every node with the smallest node id of
its output cluster; every node then takes its most frequent tag (ties go to
the smallest tag) and nodes sharing a tag form a cluster.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..config.settings import get_settings
from ..core.clustering import Clustering
from ..core.instance import LabeledInstance
from ..core.oracle import QueryOracle
from ..core.parallel import SeedSource, ordered_map, spawn_seeds
from ..errors import ParameterError
from .pivot import acc
from .rates import QueryRateFunction

logger = logging.getLogger(__name__)


def acr_default_runs(n: int, p: float) -> int:
    """K = 48 * ceil(ln(n / p))."""
    if not 0 < p < 1:
        raise ParameterError(f"failure probability must be in (0, 1), got {p}")
    return 48 * max(1, math.ceil(math.log(max(n, 1) / p)))


@dataclass(frozen=True)
class AcrOutcome:
    clustering: Clustering
    tags: np.ndarray
    final_tags: np.ndarray
    queries: int

    @property
    def runs(self) -> int:
        return int(self.tags.shape[0])


def _tagged_run(job: Tuple[LabeledInstance, QueryRateFunction, np.random.SeedSequence]):
    instance, f, seed = job
    oracle = QueryOracle(instance)
    clustering, _ = acc(oracle, f, seed)
    return clustering.min_tags(), oracle.queries_issued


def majority_tags(tags: np.ndarray) -> np.ndarray:
    """Most frequent tag per column; ties resolve to the smallest tag."""
    runs, n = tags.shape
    winners = np.empty(n, dtype=np.int64)
    for v in range(n):
        values, counts = np.unique(tags[:, v], return_counts=True)
        winners[v] = values[np.argmax(counts)]
    return winners


def acr_runs(
    instance: LabeledInstance,
    f: QueryRateFunction,
    K: Optional[int] = None,
    seed: SeedSource = None,
    *,
    p: Optional[float] = None,
    max_workers: int = 1,
) -> AcrOutcome:
    """Run ACR and keep the per-run tags and total query count."""
    if K is None:
        K = acr_default_runs(instance.n, p if p is not None else get_settings().acr_failure_probability)
    if K < 1:
        raise ParameterError(f"ACR needs K >= 1 runs, got {K}")
    f.validate(max(instance.n, 1))

    jobs = [(instance, f, child) for child in spawn_seeds(seed, K)]
    results = ordered_map(_tagged_run, jobs, max_workers)
    tags = np.stack([t for t, _ in results]) if instance.n else np.empty((K, 0), dtype=np.int64)
    queries = int(sum(q for _, q in results))

    final_tags = majority_tags(tags)
    clustering = Clustering.from_labels(final_tags)
    logger.info(
        f"ACR finished: K={K}, clusters={clustering.num_clusters}, queries={queries}"
    )
    return AcrOutcome(clustering, tags, final_tags, queries)


def acr(
    instance: LabeledInstance,
    f: QueryRateFunction,
    K: Optional[int] = None,
    seed: SeedSource = None,
    *,
    p: Optional[float] = None,
    max_workers: int = 1,
) -> Clustering:
    """Amplified cluster recovery; see acr_runs."""
    return acr_runs(instance, f, K, seed, p=p, max_workers=max_workers).clustering
