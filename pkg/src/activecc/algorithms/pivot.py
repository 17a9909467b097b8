"""
The pivot family: KwikCluster, ACC and ACCESS.

All three share one round: draw a pivot from the residual set, query a
sample of the other residual nodes, and if the sample shows a positive
label, query the rest and cluster the pivot with its positive neighbors.
Otherwise the pivot leaves as a singleton.
"""

import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..core.clustering import Clustering
from ..core.instance import SeedLike, make_rng
from ..core.oracle import QueryOracle
from ..errors import BudgetExhaustedError
from .rates import QueryRateFunction

logger = logging.getLogger(__name__)


@dataclass
class RunTrace:
    """Per-round record of one pivot-algorithm run."""

    algorithm: str
    pivots: List[int] = field(default_factory=list)
    residual_sizes: List[int] = field(default_factory=list)
    sample_sizes: List[int] = field(default_factory=list)
    singleton_rounds: List[bool] = field(default_factory=list)
    queries: int = 0
    probe_queries: int = 0
    stop_reason: str = "exhausted"
    leftover_singletons: int = 0

    @property
    def rounds(self) -> int:
        return len(self.pivots)

    def summary(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "rounds": self.rounds,
            "singleton_rounds": int(sum(self.singleton_rounds)),
            "queries": self.queries,
            "probe_queries": self.probe_queries,
            "stop_reason": self.stop_reason,
            "leftover_singletons": self.leftover_singletons,
        }


def _pivot_round(
    oracle: QueryOracle,
    alive: np.ndarray,
    sample_size: Optional[int],
    rng: np.random.Generator,
    trace: RunTrace,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    One pivot round on the sorted residual set `alive` (at least 2 nodes).

    sample_size None means a full scan (KwikCluster). Returns the output
    cluster and the next residual set, both sorted.
    """
    index = int(rng.integers(alive.size))
    pivot = int(alive[index])
    others = np.delete(alive, index)

    if sample_size is None or sample_size >= others.size:
        sampled, rest = others, others[:0]
    else:
        chosen = rng.choice(others.size, size=sample_size, replace=False)
        mask = np.zeros(others.size, dtype=bool)
        mask[chosen] = True
        sampled, rest = others[chosen], others[~mask]

    labels = oracle.query_many(pivot, sampled)
    positive = sampled[labels > 0]
    singleton = positive.size == 0
    if not singleton and rest.size:
        rest_labels = oracle.query_many(pivot, rest)
        positive = np.concatenate([positive, rest[rest_labels > 0]])

    cluster = np.sort(np.append(positive, pivot))
    remaining = np.setdiff1d(others, positive, assume_unique=True)

    trace.pivots.append(pivot)
    trace.residual_sizes.append(int(alive.size))
    trace.sample_sizes.append(int(sampled.size))
    trace.singleton_rounds.append(bool(singleton))
    logger.debug(
        f"{trace.algorithm} round {trace.rounds}: pivot={pivot} |V_r|={alive.size} "
        f"|S_r|={sampled.size} cluster={cluster.size}"
    )
    return cluster, remaining


def _finish(
    n: int,
    clusters: List[np.ndarray],
    leftover: np.ndarray,
    oracle: QueryOracle,
    start: int,
    trace: RunTrace,
    reason: str,
) -> Tuple[Clustering, RunTrace]:
    clusters.extend(np.array([v]) for v in leftover)
    trace.leftover_singletons = int(leftover.size)
    trace.stop_reason = reason
    trace.queries = oracle.queries_issued - start
    clustering = Clustering.from_clusters(n, clusters)
    logger.debug(
        f"{trace.algorithm} finished: {trace.rounds} rounds, {clustering.num_clusters} clusters, "
        f"{trace.queries} queries, stop={reason}"
    )
    return clustering, trace


@contextmanager
def _stop_on_budget(oracle: QueryOracle, start: int, trace: RunTrace) -> Iterator[None]:
    try:
        yield
    except BudgetExhaustedError as e:
        trace.stop_reason = "budget"
        trace.queries = oracle.queries_issued - start
        e.trace = trace
        logger.debug(f"{trace.algorithm} stopped by the budget after {trace.rounds} rounds")
        raise


def kwikcluster(oracle: QueryOracle, seed: SeedLike = None) -> Tuple[Clustering, RunTrace]:
    """Pivot clustering with a full scan every round; at most n^2 queries."""
    rng = make_rng(seed)
    trace = RunTrace("kwik")
    start = oracle.queries_issued
    alive = np.arange(oracle.n, dtype=np.int64)
    clusters: List[np.ndarray] = []

    with _stop_on_budget(oracle, start, trace):
        while alive.size > 1:
            cluster, alive = _pivot_round(oracle, alive, None, rng, trace)
            clusters.append(cluster)
    return _finish(oracle.n, clusters, alive, oracle, start, trace, "exhausted")


def acc(
    oracle: QueryOracle, f: QueryRateFunction, seed: SeedLike = None
) -> Tuple[Clustering, RunTrace]:
    """
    Active correlation clustering with query rate f.

    Round r samples ceil(f(|V_r|-1)) nodes without replacement. The run stops
    when V_r is empty or a single node, or when r exceeds ceil(f(|V_1|-1));
    nodes alive at the round cap become singletons. Q <= n * ceil(f(n)).
    """
    n = oracle.n
    f.validate(max(n, 1))
    rng = make_rng(seed)
    trace = RunTrace("acc")
    start = oracle.queries_issued
    alive = np.arange(n, dtype=np.int64)
    clusters: List[np.ndarray] = []
    round_cap = f.ceil(n - 1) if n >= 2 else 0

    r = 1
    with _stop_on_budget(oracle, start, trace):
        while alive.size > 1:
            if r > round_cap:
                return _finish(n, clusters, alive, oracle, start, trace, "round_cap")
            cluster, alive = _pivot_round(oracle, alive, f.ceil(alive.size - 1), rng, trace)
            clusters.append(cluster)
            r += 1
    return _finish(n, clusters, alive, oracle, start, trace, "exhausted")


def access(
    oracle: QueryOracle, f: QueryRateFunction, seed: SeedLike = None
) -> Tuple[Clustering, RunTrace]:
    """
    ACC with early stopping.

    Before each round: stop if C(|V_r|,2) <= 2n^2/f(n); otherwise probe
    ceil(C(|V_r|,2) f(n)/n^2) residual pairs drawn uniformly with
    replacement and stop if none is positive. On stop every residual node
    becomes a singleton. There is no round cap.
    """
    n = oracle.n
    f.validate(max(n, 1))
    rng = make_rng(seed)
    trace = RunTrace("access")
    start = oracle.queries_issued
    alive = np.arange(n, dtype=np.int64)
    clusters: List[np.ndarray] = []
    if n == 0:
        return _finish(n, clusters, alive, oracle, start, trace, "exhausted")

    fn = f(n)
    density_threshold = 2.0 * n * n / fn

    with _stop_on_budget(oracle, start, trace):
        while True:
            m = int(alive.size)
            pairs = m * (m - 1) // 2
            if pairs <= density_threshold:
                reason = "density" if m else "exhausted"
                return _finish(n, clusters, alive, oracle, start, trace, reason)

            probes = max(1, int(np.ceil(pairs * fn / (n * n) - 1e-9)))
            a = rng.integers(m, size=probes)
            b = rng.integers(m - 1, size=probes)
            b += b >= a
            labels = oracle.query_pairs(alive[a], alive[b])
            trace.probe_queries += probes
            if not np.any(labels > 0):
                return _finish(n, clusters, alive, oracle, start, trace, "probe")

            cluster, alive = _pivot_round(oracle, alive, f.ceil(m - 1), rng, trace)
            clusters.append(cluster)
