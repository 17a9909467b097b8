"""
Clustering: a partition of 0..n-1 into disjoint clusters with stable ids.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Sequence, Set, Tuple

import numpy as np

from ..errors import ContractError


@dataclass(frozen=True, eq=False)
class Clustering:
    """Cluster ids follow creation order; members of each cluster are sorted."""

    cluster_of: np.ndarray
    clusters: Tuple[np.ndarray, ...]

    @classmethod
    def from_clusters(cls, n: int, clusters: Iterable[Iterable[int]]) -> "Clustering":
        """Build from member lists; raises ContractError unless they partition 0..n-1."""
        cluster_of = np.full(n, -1, dtype=np.int64)
        members: List[np.ndarray] = []
        for cid, cluster in enumerate(clusters):
            nodes = np.unique(np.asarray(list(cluster), dtype=np.int64))
            if nodes.size == 0:
                raise ContractError(f"cluster {cid} is empty")
            if nodes[0] < 0 or nodes[-1] >= n:
                raise ContractError(f"cluster {cid} has nodes outside 0..{n - 1}")
            if np.any(cluster_of[nodes] >= 0):
                raise ContractError(f"cluster {cid} overlaps an earlier cluster")
            cluster_of[nodes] = cid
            nodes.setflags(write=False)
            members.append(nodes)
        if np.any(cluster_of < 0):
            missing = np.flatnonzero(cluster_of < 0)[:10].tolist()
            raise ContractError(f"clustering does not cover nodes {missing}")
        cluster_of.setflags(write=False)
        return cls(cluster_of, tuple(members))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Clustering":
        """Group nodes by label; ids are assigned in order of first appearance."""
        labels = np.asarray(labels)
        _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
        rank = np.empty(first.size, dtype=np.int64)
        rank[np.argsort(first, kind="stable")] = np.arange(first.size)
        dense = rank[inverse.ravel()]
        groups: List[List[int]] = [[] for _ in range(first.size)]
        for v, cid in enumerate(dense):
            groups[cid].append(v)
        return cls.from_clusters(labels.size, groups)

    @classmethod
    def singletons(cls, n: int) -> "Clustering":
        return cls.from_clusters(n, ([v] for v in range(n)))

    @property
    def n(self) -> int:
        return int(self.cluster_of.size)

    @property
    def num_clusters(self) -> int:
        return len(self.clusters)

    def sizes(self) -> List[int]:
        return [int(c.size) for c in self.clusters]

    def min_tags(self) -> np.ndarray:
        """Tag every node with the smallest node id of its cluster."""
        tags = np.empty(self.n, dtype=np.int64)
        for members in self.clusters:
            tags[members] = members[0]
        return tags

    def as_sets(self) -> Set[FrozenSet[int]]:
        return {frozenset(int(v) for v in c) for c in self.clusters}

    def same_partition(self, other: "Clustering") -> bool:
        """True when both describe the same partition, ignoring ids."""
        return self.n == other.n and self.as_sets() == other.as_sets()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return np.array_equal(self.cluster_of, other.cluster_of)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Clustering(n={self.n}, clusters={self.num_clusters})"
