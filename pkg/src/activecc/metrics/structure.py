"""
Structural statistics: bad triangles, knit certificates, recovery distance.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from ..config.settings import Settings, get_settings
from ..core.clustering import Clustering
from ..core.instance import LabeledInstance
from ..errors import ContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BadTriangleStats:
    total: int
    packing_size: int


def bad_triangle_stats(
    instance: LabeledInstance, settings: Optional[Settings] = None
) -> BadTriangleStats:
    """
    Count triples labeled {+, +, -} and greedily pack pair-disjoint ones.

    total = sum_v C(deg v, 2) - 3 * (#positive triangles). The packing scans
    centers v in id order and neighbor pairs (a, b) lexicographically, so it
    is maximal and deterministic; its size lower-bounds OPT.
    """
    settings = settings or get_settings()
    settings.check_capacity("bad_triangle_stats", instance.n, "triangle_max_nodes")
    matrix = instance.matrix
    degrees = instance.degrees()

    adjacency = matrix.astype(np.float32)
    paths = (adjacency @ adjacency).astype(np.int64)
    triangles = int((paths * matrix).sum()) // 6
    wedges = int((degrees * (degrees - 1) // 2).sum())
    total = wedges - 3 * triangles

    # used[x, y]: the pair {x, y} is a side of a packed triangle
    used = np.zeros_like(matrix)
    packing = 0
    for v in range(instance.n):
        neighbors = instance.neighbors(v)
        free = neighbors[~used[v, neighbors]]
        if free.size < 2:
            continue
        block = np.ix_(free, free)
        open_pairs = np.triu(~matrix[block] & ~used[block], k=1)
        matched = np.zeros(free.size, dtype=bool)
        for i in np.flatnonzero(open_pairs.any(axis=1)):
            if matched[i]:
                continue
            partners = np.flatnonzero(open_pairs[i] & ~matched)
            if partners.size == 0:
                continue
            j = partners[0]
            matched[i] = matched[j] = True
            a, b = free[i], free[j]
            used[v, [a, b]] = used[[a, b], v] = True
            used[a, b] = used[b, a] = True
            packing += 1
    logger.debug(f"bad triangles: total={total}, greedy packing={packing}")
    return BadTriangleStats(total=total, packing_size=packing)


@dataclass(frozen=True)
class KnitCertificate:
    """Smallest epsilon for which the set is (strongly) (1-epsilon)-knit."""

    epsilon: float
    size: int
    internal_edges: int
    cut_edges: int
    strong: bool = False

    def holds(self, epsilon: float) -> bool:
        return self.epsilon <= epsilon + 1e-12


def _members(instance: LabeledInstance, nodes: Iterable[int]) -> np.ndarray:
    members = np.unique(np.asarray(list(nodes), dtype=np.int64))
    if members.size < 2:
        raise ContractError(f"knit checks need |C| >= 2, got {members.size}")
    if members[0] < 0 or members[-1] >= instance.n:
        raise ContractError("node set has ids outside the instance")
    return members


def _edge_counts(instance: LabeledInstance, members: np.ndarray) -> Tuple[int, int]:
    internal = int(instance.matrix[np.ix_(members, members)].sum()) // 2
    cut = int(instance.degrees()[members].sum()) - 2 * internal
    return internal, cut


def knit_check(instance: LabeledInstance, nodes: Iterable[int]) -> KnitCertificate:
    """epsilon* = max(1 - |E_C| / C(|C|,2), |cut(C)| / C(|C|,2))."""
    members = _members(instance, nodes)
    internal, cut = _edge_counts(instance, members)
    pairs = members.size * (members.size - 1) / 2
    epsilon = max(1.0 - internal / pairs, cut / pairs)
    return KnitCertificate(epsilon, int(members.size), internal, cut)


def strongly_knit_check(instance: LabeledInstance, nodes: Iterable[int]) -> KnitCertificate:
    """
    Requires N_v inside C for every member v; then
    epsilon* = 1 - min_v |N_v| / (|C| - 1). Otherwise epsilon* is infinite.
    """
    members = _members(instance, nodes)
    internal, cut = _edge_counts(instance, members)
    if cut:
        return KnitCertificate(math.inf, int(members.size), internal, cut, strong=True)
    min_degree = int(instance.degrees()[members].min())
    epsilon = 1.0 - min_degree / (members.size - 1)
    return KnitCertificate(epsilon, int(members.size), internal, cut, strong=True)


def recovery_distance(nodes: Iterable[int], clustering: Clustering) -> Tuple[int, int]:
    """
    Output cluster closest to C in symmetric difference, and that distance.

    |C xor C_hat| = |C| + |C_hat| - 2|C and C_hat|; ties go to the smaller id.
    """
    members = np.unique(np.asarray(list(nodes), dtype=np.int64))
    if clustering.num_clusters == 0:
        return -1, int(members.size)
    sizes = np.array(clustering.sizes(), dtype=np.int64)
    overlap = np.bincount(clustering.cluster_of[members], minlength=sizes.size)
    distances = members.size + sizes - 2 * overlap
    best = int(np.argmin(distances))
    return best, int(distances[best])
