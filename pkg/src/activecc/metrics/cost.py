"""
Disagreement cost of a clustering.
"""

import numpy as np

from ..core.clustering import Clustering
from ..core.instance import LabeledInstance
from ..errors import ContractError


def _check(instance: LabeledInstance, clustering: Clustering) -> np.ndarray:
    if clustering.n != instance.n:
        raise ContractError(
            f"clustering covers {clustering.n} nodes but the instance has {instance.n}"
        )
    return clustering.cluster_of


def cost(instance: LabeledInstance, clustering: Clustering) -> int:
    """
    |Gamma_C|: positive pairs split plus negative pairs co-clustered.

    Runs in O(n + |E|): with p intra-cluster positive pairs and P intra-cluster
    pairs overall, the cost is (|E| - p) + (P - p).
    """
    labels = _check(instance, clustering)
    edges = instance.edges()
    intra_positive = int(np.count_nonzero(labels[edges[:, 0]] == labels[edges[:, 1]]))
    sizes = np.bincount(labels) if labels.size else np.zeros(0, dtype=np.int64)
    intra_pairs = int((sizes * (sizes - 1) // 2).sum())
    return (instance.num_edges - intra_positive) + (intra_pairs - intra_positive)


def cost_reference(instance: LabeledInstance, clustering: Clustering) -> int:
    """O(n^2) pair scan; kept for differential testing of `cost`."""
    labels = _check(instance, clustering)
    upper = np.triu_indices(instance.n, k=1)
    together = labels[upper[0]] == labels[upper[1]]
    positive = instance.matrix[upper]
    return int(np.count_nonzero(together != positive))
