"""
Labeled instances (V, sigma), synthetic generators and instance files.

Node ids are dense 0-based integers. Only positive labels are stored; a pair
missing from the adjacency has sigma = -1.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import ContractError, InstanceFormatError, ParameterError

logger = logging.getLogger(__name__)

SeedLike = Union[None, int, np.random.SeedSequence, np.random.Generator]

INSTANCE_FORMATS = ("edges", "dimacs")


def make_rng(seed: SeedLike) -> np.random.Generator:
    """Build a Generator from an int, SeedSequence or an existing Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class LabeledInstance:
    """Ground-truth similarity over all node pairs, stored as positive adjacency."""

    n: int
    positive_adjacency: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ContractError(f"node count must be nonnegative, got {self.n}")
        if len(self.positive_adjacency) != self.n:
            raise ContractError(
                f"adjacency has {len(self.positive_adjacency)} rows for n={self.n}"
            )

        rows = []
        for v, neighbors in enumerate(self.positive_adjacency):
            neighbors = np.asarray(neighbors, dtype=np.int64)
            if neighbors.ndim != 1:
                raise ContractError(f"adjacency row {v} is not one-dimensional")
            if neighbors.size:
                if neighbors[0] < 0 or neighbors[-1] >= self.n:
                    raise ContractError(f"adjacency row {v} has out-of-range neighbors")
                if np.any(np.diff(neighbors) <= 0):
                    raise ContractError(f"adjacency row {v} is not strictly sorted")
            rows.append(_readonly(neighbors))
        object.__setattr__(self, "positive_adjacency", tuple(rows))

        src = np.repeat(np.arange(self.n, dtype=np.int64), [len(r) for r in rows])
        dst = np.concatenate(rows) if rows else np.empty(0, dtype=np.int64)
        if np.any(src == dst):
            raise ContractError("self-loops are not allowed")
        lo, hi = np.minimum(src, dst), np.maximum(src, dst)
        _, counts = np.unique(lo * max(self.n, 1) + hi, return_counts=True)
        if np.any(counts != 2):
            raise ContractError("positive adjacency is not symmetric")

    # Construction

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "LabeledInstance":
        """Build an instance from unordered positive pairs (duplicates are an error)."""
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise ContractError(f"edge endpoint out of range for n={n}")
        if np.any(pairs[:, 0] == pairs[:, 1]):
            raise ContractError("self-loops are not allowed")
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        if np.unique(lo * max(n, 1) + hi).size != lo.size:
            raise ContractError("duplicate edge declaration")
        return cls._from_directed(n, np.concatenate([lo, hi]), np.concatenate([hi, lo]))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "LabeledInstance":
        """Build an instance from a symmetric boolean matrix with an empty diagonal."""
        matrix = np.asarray(matrix, dtype=bool)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ContractError("similarity matrix must be square")
        if not np.array_equal(matrix, matrix.T):
            raise ContractError("similarity matrix is not symmetric")
        if matrix.diagonal().any():
            raise ContractError("self-loops are not allowed")
        return cls(matrix.shape[0], tuple(np.flatnonzero(row) for row in matrix))

    @classmethod
    def from_cluster_labels(cls, labels: Sequence[int]) -> "LabeledInstance":
        """Union of disjoint cliques: positive pairs are exactly the co-labeled pairs."""
        labels = np.asarray(labels, dtype=np.int64)
        n = labels.size
        order = np.argsort(labels, kind="stable")
        boundaries = np.flatnonzero(np.diff(labels[order])) + 1
        adjacency: List[np.ndarray] = [None] * n  # type: ignore[list-item]
        for block in np.split(order, boundaries):
            members = np.sort(block)
            for v in members:
                adjacency[v] = members[members != v]
        return cls(n, tuple(adjacency))

    @classmethod
    def _from_directed(cls, n: int, src: np.ndarray, dst: np.ndarray) -> "LabeledInstance":
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        splits = np.searchsorted(src, np.arange(1, n))
        return cls(n, tuple(np.split(dst, splits)) if n else ())

    # Views

    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense boolean positive-label matrix (read-only)."""
        matrix = np.zeros((self.n, self.n), dtype=bool)
        for v, neighbors in enumerate(self.positive_adjacency):
            matrix[v, neighbors] = True
        return _readonly(matrix)

    @cached_property
    def _edge_array(self) -> np.ndarray:
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        dst = np.concatenate(self.positive_adjacency) if self.n else np.empty(0, np.int64)
        keep = src < dst
        return _readonly(np.stack([src[keep], dst[keep]], axis=1))

    def edges(self) -> np.ndarray:
        """Positive pairs as an (m, 2) array, u < v, in lexicographic order."""
        return self._edge_array

    @property
    def num_edges(self) -> int:
        return int(self._edge_array.shape[0])

    @property
    def num_pairs(self) -> int:
        return self.n * (self.n - 1) // 2

    def degrees(self) -> np.ndarray:
        return np.array([len(r) for r in self.positive_adjacency], dtype=np.int64)

    def neighbors(self, v: int) -> np.ndarray:
        return self.positive_adjacency[v]

    def sigma(self, u: int, v: int) -> int:
        """Label of the pair {u, v} in {-1, +1}."""
        if u == v:
            raise ContractError(f"sigma is undefined on the diagonal (u=v={u})")
        return 1 if self.matrix[u, v] else -1

    def complement(self) -> "LabeledInstance":
        """Instance with every pair label flipped."""
        matrix = ~self.matrix
        np.fill_diagonal(matrix, False)
        return LabeledInstance.from_matrix(matrix)

    def relabel(self, permutation: Sequence[int]) -> "LabeledInstance":
        """Rename node v to permutation[v]."""
        permutation = np.asarray(permutation, dtype=np.int64)
        if not np.array_equal(np.sort(permutation), np.arange(self.n)):
            raise ContractError("relabeling must be a permutation of 0..n-1")
        edges = self.edges()
        return LabeledInstance.from_edges(self.n, permutation[edges])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledInstance):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges(), other.edges())

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LabeledInstance(n={self.n}, edges={self.num_edges})"


@dataclass(frozen=True, eq=False)
class GroundTruthPartition:
    """Latent cluster id for every node."""

    cluster_of: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.cluster_of, dtype=np.int64)
        if labels.ndim != 1:
            raise ContractError("cluster_of must be one-dimensional")
        if labels.size and labels.min() < 0:
            raise ContractError("cluster ids must be nonnegative")
        object.__setattr__(self, "cluster_of", _readonly(labels.copy()))

    @property
    def n(self) -> int:
        return int(self.cluster_of.size)

    @property
    def num_clusters(self) -> int:
        return int(np.unique(self.cluster_of).size)

    def clusters(self) -> List[np.ndarray]:
        """Non-empty clusters as sorted node arrays, ordered by cluster id."""
        return [np.flatnonzero(self.cluster_of == cid) for cid in np.unique(self.cluster_of)]

    def sizes(self) -> Dict[int, int]:
        ids, counts = np.unique(self.cluster_of, return_counts=True)
        return {int(i): int(c) for i, c in zip(ids, counts)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroundTruthPartition):
            return NotImplemented
        return np.array_equal(self.cluster_of, other.cluster_of)

    __hash__ = None  # type: ignore[assignment]


# Generators


def _check_sizes(cluster_sizes: Sequence[int]) -> List[int]:
    sizes = [int(s) for s in cluster_sizes]
    if not sizes:
        raise ParameterError("cluster_sizes must be non-empty")
    if any(s < 1 for s in sizes):
        raise ParameterError(f"every cluster size must be >= 1, got {sizes}")
    return sizes


def _scatter_labels(sizes: Sequence[int], rng: np.random.Generator) -> np.ndarray:
    """Assign cluster i to sizes[i] nodes chosen by a random node permutation."""
    n = sum(sizes)
    labels = np.empty(n, dtype=np.int64)
    labels[rng.permutation(n)] = np.repeat(np.arange(len(sizes)), sizes)
    return labels


def generate_clique_union(
    cluster_sizes: Sequence[int], seed: SeedLike = None
) -> Tuple[LabeledInstance, GroundTruthPartition]:
    """
    Perfectly clusterable instance: positive pairs are exactly the intra-cluster pairs.

    Node ids are assigned to clusters by a seeded random permutation, so latent
    clusters are not contiguous id ranges.
    """
    sizes = _check_sizes(cluster_sizes)
    labels = _scatter_labels(sizes, make_rng(seed))
    instance = LabeledInstance.from_cluster_labels(labels)
    logger.info(f"Generated clique union: n={instance.n}, clusters={len(sizes)}")
    return instance, GroundTruthPartition(labels)


def flip_probability(instance: LabeledInstance, eta: float) -> float:
    """p = eta * |E| / C(n, 2)."""
    if eta < 0 or not math.isfinite(eta):
        raise ParameterError(f"eta must be a nonnegative real, got {eta}")
    if instance.num_pairs == 0 or eta == 0:
        return 0.0
    p = eta * instance.num_edges / instance.num_pairs
    if p > 1 + 1e-12:
        raise ParameterError(f"flip probability {p:.6g} > 1 (eta={eta}, |E|={instance.num_edges})")
    return min(p, 1.0)


def perturb(instance: LabeledInstance, eta: float, seed: SeedLike = None) -> LabeledInstance:
    """
    Flip each pair label independently with probability eta*|E|/C(n,2).

    One Bernoulli draw per pair, in (u<v) row-major order. eta = 0 returns the
    input unchanged.
    """
    p = flip_probability(instance, eta)
    if eta == 0 or instance.num_pairs == 0:
        return instance

    rng = make_rng(seed)
    upper = np.triu_indices(instance.n, k=1)
    flips = rng.random(instance.num_pairs) < p
    matrix = np.zeros((instance.n, instance.n), dtype=bool)
    matrix[upper] = instance.matrix[upper] ^ flips
    matrix |= matrix.T
    logger.debug(f"Perturbed n={instance.n} with p={p:.6g}: {int(flips.sum())} flips")
    return LabeledInstance.from_matrix(matrix)


def generate_planted_partition(
    cluster_sizes: Sequence[int], drop: float, cut: float, seed: SeedLike = None
) -> Tuple[LabeledInstance, GroundTruthPartition]:
    """
    Stochastic block model around a clique union.

    Each intra-cluster pair is removed with probability `drop`, each
    inter-cluster pair is added with probability `cut`. With cut = 0 every
    latent cluster keeps N_v inside itself (strong knit candidate).
    """
    for name, value in (("drop", drop), ("cut", cut)):
        if not 0 <= value <= 1:
            raise ParameterError(f"{name} must be in [0, 1], got {value}")
    sizes = _check_sizes(cluster_sizes)
    rng = make_rng(seed)
    labels = _scatter_labels(sizes, rng)
    n = labels.size

    upper = np.triu_indices(n, k=1)
    same = labels[upper[0]] == labels[upper[1]]
    draws = rng.random(upper[0].size)
    keep = np.where(same, draws >= drop, draws < cut)
    matrix = np.zeros((n, n), dtype=bool)
    matrix[upper] = keep
    matrix |= matrix.T
    instance = LabeledInstance.from_matrix(matrix)
    logger.info(
        f"Generated planted partition: n={n}, clusters={len(sizes)}, drop={drop}, cut={cut}"
    )
    return instance, GroundTruthPartition(labels)


def generate_lb_cliques(
    n: int, d: int, seed: SeedLike = None
) -> Tuple[LabeledInstance, GroundTruthPartition]:
    """Each node joins one of d cliques uniformly at random (with replacement)."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if d < 2:
        raise ParameterError(f"the construction needs d >= 2 cliques, got {d}")
    labels = make_rng(seed).integers(d, size=n)
    return LabeledInstance.from_cluster_labels(labels), GroundTruthPartition(labels)


def _integral(value: float, what: str) -> int:
    rounded = int(round(value))
    if rounded <= 0 or abs(value - rounded) > 1e-9:
        raise ParameterError(f"{what} must be a positive integer, got {value:.6g}")
    return rounded


def generate_lb_planted(
    n: int, epsilon: float, alpha: float = 0.9, seed: SeedLike = None
) -> LabeledInstance:
    """
    Planted construction with k = 1/epsilon cliques on the A side.

    Layout: A = nodes 0..alpha*n-1, split into k contiguous blocks A_0..A_{k-1}
    of alpha*n/k nodes each; B = the remaining nodes. Every B node v draws
    i_v uniformly from [k] and is positive exactly towards A_{i_v}; B-B pairs
    are negative.
    """
    if not 0 < alpha < 1:
        raise ParameterError(f"alpha must be in (0, 1), got {alpha}")
    if epsilon <= 0:
        raise ParameterError(f"epsilon must be positive, got {epsilon}")
    k = _integral(1.0 / epsilon, "1/epsilon")
    a = _integral(alpha * n, "alpha*n")
    if a % k:
        raise ParameterError(f"alpha*n={a} is not divisible into k={k} equal parts")
    block = a // k

    rng = make_rng(seed)
    assignment = rng.integers(k, size=n - a)
    labels = np.concatenate([np.repeat(np.arange(k), block), assignment])

    edges: List[np.ndarray] = []
    for i in range(k):
        members = np.arange(i * block, (i + 1) * block)
        iu = np.triu_indices(block, k=1)
        edges.append(np.stack([members[iu[0]], members[iu[1]]], axis=1))
    for offset, i in enumerate(assignment):
        v = a + offset
        members = np.arange(i * block, (i + 1) * block)
        edges.append(np.stack([members, np.full(block, v)], axis=1))
    instance = LabeledInstance.from_edges(n, np.concatenate(edges) if edges else [])
    logger.info(f"Generated planted lower-bound instance: n={n}, k={k}, |A|={a}")
    logger.debug(f"B-side assignment counts: {np.bincount(labels[a:], minlength=k).tolist()}")
    return instance


# Cluster size profiles


def _largest_remainder(weights: np.ndarray, n: int) -> List[int]:
    k = weights.size
    if n < k:
        raise ParameterError(f"cannot split {n} nodes into {k} non-empty clusters")
    raw = weights / weights.sum() * n
    sizes = np.maximum(np.floor(raw).astype(np.int64), 1)
    remainder = n - int(sizes.sum())
    fractions = raw - np.floor(raw)
    if remainder > 0:
        for i in np.argsort(-fractions, kind="stable")[:remainder]:
            sizes[i] += 1
    while remainder < 0:
        i = int(np.argmax(sizes))
        sizes[i] -= 1
        remainder += 1
    return sizes.tolist()


def skew_sizes(n: int = 900, k: int = 30, decay: float = 0.9) -> List[int]:
    """Geometrically decaying cluster sizes summing to n."""
    return _largest_remainder(decay ** np.arange(k, dtype=float), n)


def sqrt_sizes(n: int = 900, k: int = 30) -> List[int]:
    """Cluster sizes proportional to sqrt(i), i = 1..k, summing to n."""
    return _largest_remainder(np.sqrt(np.arange(1, k + 1, dtype=float)), n)


# Files


def save_instance(instance: LabeledInstance, path: Union[str, Path], format: str = "edges") -> None:
    """Write an instance in canonical form: header, then positive pairs u<v in order."""
    if format not in INSTANCE_FORMATS:
        raise ParameterError(f"unknown instance format {format!r}")
    edges = instance.edges()
    if format == "edges":
        lines = [f"n {instance.n}"] + [f"{u} {v}" for u, v in edges]
    else:
        lines = [f"p edge {instance.n} {len(edges)}"] + [f"e {u + 1} {v + 1}" for u, v in edges]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"Saved instance (n={instance.n}, edges={len(edges)}) to {path}")


def _parse_int(token: str, path: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceFormatError(f"expected an integer, got {token!r}", path, line) from None


def load_instance(path: Union[str, Path], format: str = "edges") -> LabeledInstance:
    """
    Parse an instance file.

    `edges`: header `n <count>`, then `u v [+|-]` per line (0-based). A pair
    declared both `+` and `-`, or declared twice, is rejected.
    `dimacs`: `p edge <n> <m>` then `e u v` (1-based); `c` lines are comments.
    """
    if format not in INSTANCE_FORMATS:
        raise ParameterError(f"unknown instance format {format!r}")
    path_str = str(path)
    comment = "#" if format == "edges" else "c"

    n: Optional[int] = None
    declared: Dict[Tuple[int, int], Tuple[bool, int]] = {}
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith(comment):
                continue
            parts = line.split()

            if n is None:
                if format == "edges" and len(parts) == 2 and parts[0] == "n":
                    n = _parse_int(parts[1], path_str, lineno)
                elif format == "dimacs" and len(parts) == 4 and parts[:2] == ["p", "edge"]:
                    n = _parse_int(parts[2], path_str, lineno)
                else:
                    raise InstanceFormatError("missing header line", path_str, lineno)
                if n < 0:
                    raise InstanceFormatError("node count must be nonnegative", path_str, lineno)
                continue

            if format == "edges":
                if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] not in ("+", "-")):
                    raise InstanceFormatError(f"malformed edge line {line!r}", path_str, lineno)
                u, v = (_parse_int(t, path_str, lineno) for t in parts[:2])
                positive = len(parts) == 2 or parts[2] == "+"
            else:
                if len(parts) != 3 or parts[0] != "e":
                    raise InstanceFormatError(f"malformed edge line {line!r}", path_str, lineno)
                u, v = (_parse_int(t, path_str, lineno) - 1 for t in parts[1:])
                positive = True

            if not (0 <= u < n and 0 <= v < n):
                raise InstanceFormatError(f"node out of range 0..{n - 1}", path_str, lineno)
            if u == v:
                raise InstanceFormatError(f"self-loop on node {u}", path_str, lineno)
            key = (min(u, v), max(u, v))
            if key in declared:
                first_sign, first_line = declared[key]
                kind = "inconsistent" if first_sign != positive else "duplicate"
                raise InstanceFormatError(
                    f"{kind} declaration of pair {key} (first on line {first_line})",
                    path_str,
                    lineno,
                )
            declared[key] = (positive, lineno)

    if n is None:
        raise InstanceFormatError("missing header line", path_str)
    edges = [key for key, (positive, _) in declared.items() if positive]
    instance = LabeledInstance.from_edges(n, edges)
    logger.info(f"Loaded instance from {path}: n={instance.n}, edges={instance.num_edges}")
    return instance


def save_ground_truth(partition: GroundTruthPartition, path: Union[str, Path]) -> None:
    """One `node cluster_id` line per node, in node order."""
    lines = [f"{v} {c}" for v, c in enumerate(partition.cluster_of)]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def load_ground_truth(path: Union[str, Path], n: Optional[int] = None) -> GroundTruthPartition:
    """
    Parse a ground-truth file. Cluster tokens may be any strings; they are
    mapped to dense ids in order of first appearance.
    """
    path_str = str(path)
    assignment: Dict[int, int] = {}
    names: Dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InstanceFormatError(f"expected 'node cluster_id', got {line!r}", path_str, lineno)
            v = _parse_int(parts[0], path_str, lineno)
            if v < 0 or (n is not None and v >= n):
                raise InstanceFormatError(f"node {v} out of range", path_str, lineno)
            if v in assignment:
                raise InstanceFormatError(f"node {v} assigned twice", path_str, lineno)
            assignment[v] = names.setdefault(parts[1], len(names))

    total = n if n is not None else len(assignment)
    missing = sorted(set(range(total)) - set(assignment))
    if missing:
        raise InstanceFormatError(f"nodes without a cluster: {missing[:10]}", path_str)
    labels = np.array([assignment[v] for v in range(total)], dtype=np.int64)
    return GroundTruthPartition(labels)
