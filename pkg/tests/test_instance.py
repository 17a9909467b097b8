"""
Test suite for labeled instances, generators and instance files.
"""

import pytest
import tempfile
import shutil
from pathlib import Path
import sys

import numpy as np

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from activecc.core.instance import (
    GroundTruthPartition,
    LabeledInstance,
    flip_probability,
    generate_clique_union,
    generate_lb_cliques,
    generate_lb_planted,
    generate_planted_partition,
    load_ground_truth,
    load_instance,
    perturb,
    save_ground_truth,
    save_instance,
    skew_sizes,
    sqrt_sizes,
)
from activecc.core.clustering import Clustering
from activecc.errors import ContractError, InstanceFormatError, ParameterError
from activecc.metrics import cost


@pytest.fixture
def temp_dir():
    """Create a temporary directory for file tests."""
    path = tempfile.mkdtemp()
    yield Path(path)
    shutil.rmtree(path, ignore_errors=True)


class TestLabeledInstance:
    """Test construction and views of LabeledInstance."""

    def test_from_edges(self):
        instance = LabeledInstance.from_edges(4, [(2, 1), (0, 1), (3, 2)])
        assert instance.n == 4
        assert instance.num_edges == 3
        assert instance.num_pairs == 6
        assert instance.edges().tolist() == [[0, 1], [1, 2], [2, 3]]
        assert instance.sigma(1, 0) == 1
        assert instance.sigma(0, 3) == -1
        assert instance.degrees().tolist() == [1, 2, 2, 1]

    def test_sigma_on_diagonal_is_rejected(self):
        instance = LabeledInstance.from_edges(2, [(0, 1)])
        with pytest.raises(ContractError):
            instance.sigma(1, 1)

    def test_duplicate_and_self_loop_edges(self):
        with pytest.raises(ContractError):
            LabeledInstance.from_edges(3, [(0, 1), (1, 0)])
        with pytest.raises(ContractError):
            LabeledInstance.from_edges(3, [(2, 2)])
        with pytest.raises(ContractError):
            LabeledInstance.from_edges(3, [(0, 3)])

    def test_asymmetric_adjacency_is_rejected(self):
        with pytest.raises(ContractError):
            LabeledInstance(2, (np.array([1]), np.array([], dtype=np.int64)))

    def test_matrix_matches_edges(self):
        instance = LabeledInstance.from_edges(5, [(0, 4), (1, 3)])
        matrix = instance.matrix
        assert matrix.dtype == bool
        assert matrix[0, 4] and matrix[4, 0] and matrix[1, 3]
        assert matrix.sum() == 4
        assert not matrix.flags.writeable
        assert LabeledInstance.from_matrix(matrix) == instance

    def test_complement(self):
        instance = LabeledInstance.from_edges(3, [(0, 1)])
        complement = instance.complement()
        assert complement.edges().tolist() == [[0, 2], [1, 2]]
        assert complement.complement() == instance

    def test_relabel(self):
        instance = LabeledInstance.from_edges(3, [(0, 1)])
        relabeled = instance.relabel([2, 0, 1])
        assert relabeled.edges().tolist() == [[0, 2]]
        with pytest.raises(ContractError):
            instance.relabel([0, 0, 1])

    def test_empty_instance(self):
        instance = LabeledInstance.from_edges(0, [])
        assert instance.n == 0
        assert instance.num_edges == 0
        assert instance.edges().shape == (0, 2)


class TestGenerators:
    """Test synthetic instance generators."""

    def test_clique_union_is_perfectly_clusterable(self):
        instance, truth = generate_clique_union([3, 2, 1], seed=7)
        assert instance.n == 6
        assert instance.num_edges == 3 + 1
        assert sorted(truth.sizes().values()) == [1, 2, 3]
        labels = truth.cluster_of
        for u in range(6):
            for v in range(u + 1, 6):
                assert instance.sigma(u, v) == (1 if labels[u] == labels[v] else -1)

    def test_clique_union_is_seeded(self):
        a, _ = generate_clique_union([5, 5, 5], seed=3)
        b, _ = generate_clique_union([5, 5, 5], seed=3)
        assert a == b

    def test_clique_union_rejects_empty_clusters(self):
        with pytest.raises(ParameterError):
            generate_clique_union([3, 0])

    def test_perturb_eta_zero_returns_input(self):
        instance, _ = generate_clique_union([4, 4], seed=1)
        assert perturb(instance, 0.0, seed=5) is instance

    def test_perturb_is_deterministic(self):
        instance, _ = generate_clique_union([10, 10, 10], seed=1)
        first = perturb(instance, 0.5, seed=11)
        second = perturb(instance, 0.5, seed=11)
        assert first == second
        assert first != instance

    def test_perturb_flip_rate(self):
        base, _ = generate_clique_union([5, 5], seed=0)
        p = flip_probability(base, 0.5)
        assert p == pytest.approx(0.5 * 20 / 45)
        upper = np.triu_indices(base.n, k=1)
        flips = draws = 0
        for seed in range(223):
            noisy = perturb(base, 0.5, seed=seed)
            flips += int((noisy.matrix[upper] != base.matrix[upper]).sum())
            draws += upper[0].size
        sigma = np.sqrt(draws * p * (1 - p))
        assert abs(flips - draws * p) <= 3 * sigma

    def test_flip_probability(self):
        instance = LabeledInstance.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        assert flip_probability(instance, 1.0) == pytest.approx(0.5)
        assert flip_probability(instance, 0.0) == 0.0
        with pytest.raises(ParameterError):
            flip_probability(instance, -0.1)

    def test_flip_probability_above_one_is_rejected(self):
        triangle = LabeledInstance.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        with pytest.raises(ParameterError):
            perturb(triangle, 2.0, seed=0)

    def test_perturb_with_certain_flips_is_the_complement(self):
        instance = LabeledInstance.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        assert perturb(instance, 2.0, seed=0) == instance.complement()

    def test_planted_partition_without_cut_keeps_neighborhoods_inside(self):
        instance, truth = generate_planted_partition([20, 15], drop=0.2, cut=0.0, seed=4)
        labels = truth.cluster_of
        edges = instance.edges()
        assert np.all(labels[edges[:, 0]] == labels[edges[:, 1]])
        assert instance.num_edges < 190 + 105

    def test_planted_partition_rejects_bad_probabilities(self):
        with pytest.raises(ParameterError):
            generate_planted_partition([5], drop=1.5, cut=0.0)

    def test_lb_cliques(self):
        instance, truth = generate_lb_cliques(50, 4, seed=2)
        assert instance.n == 50
        assert truth.cluster_of.max() < 4
        assert truth.num_clusters <= 4
        with pytest.raises(ParameterError):
            generate_lb_cliques(10, 1)

    def test_lb_planted_layout(self):
        instance = generate_lb_planted(100, 0.1, alpha=0.9, seed=8)
        assert instance.n == 100
        block = 9
        for i in range(10):
            members = range(i * block, (i + 1) * block)
            for u in members:
                assert set(instance.neighbors(u).tolist()) >= set(members) - {u}
        for v in range(90, 100):
            neighbors = instance.neighbors(v)
            assert neighbors.size == block
            first = int(neighbors[0]) // block
            assert np.all(neighbors // block == first)
            assert neighbors.max() < 90

    def test_lb_cliques_sizes_concentrate(self):
        n, d = 1000, 10
        instance, truth = generate_lb_cliques(n, d, seed=11)
        sizes = np.bincount(truth.cluster_of, minlength=d)
        sigma = np.sqrt(n * (1 / d) * (1 - 1 / d))
        assert sizes.sum() == n
        assert np.all(np.abs(sizes - n / d) <= 3 * sigma)
        assert instance.num_edges == int(sum(s * (s - 1) // 2 for s in sizes))

    def test_lb_planted_natural_clustering_cost(self):
        n, k, alpha = 200, 10, 0.9
        a, block = 180, 18
        costs = []
        for seed in range(200):
            instance = generate_lb_planted(n, 1 / k, alpha, seed=seed)
            attached = np.array([instance.neighbors(v)[0] // block for v in range(a, n)])
            labels = np.concatenate([np.repeat(np.arange(k), block), attached])
            counts = np.bincount(attached, minlength=k)
            same_pairs = int(sum(c * (c - 1) // 2 for c in counts))
            value = cost(instance, Clustering.from_labels(labels))
            assert value == same_pairs
            costs.append(value)
        costs = np.asarray(costs, dtype=float)
        b = n - a
        standard_error = costs.std(ddof=1) / np.sqrt(costs.size)
        assert abs(costs.mean() - b * (b - 1) / 2 / k) <= 3 * standard_error
        assert costs.mean() <= (1 - alpha) ** 2 * n ** 2 / k

    def test_lb_planted_requires_divisible_sizes(self):
        with pytest.raises(ParameterError):
            generate_lb_planted(100, 1 / 7, alpha=0.9)
        with pytest.raises(ParameterError):
            generate_lb_planted(100, 0.1, alpha=1.0)


class TestSizeProfiles:
    """Test the skew and sqrt size profiles."""

    def test_skew_sizes(self):
        sizes = skew_sizes()
        assert len(sizes) == 30
        assert sum(sizes) == 900
        assert min(sizes) >= 1
        assert sizes == sorted(sizes, reverse=True)
        assert sizes == skew_sizes()

    def test_sqrt_sizes(self):
        sizes = sqrt_sizes()
        assert len(sizes) == 30
        assert sum(sizes) == 900
        assert sizes == sorted(sizes)

    def test_too_many_clusters(self):
        with pytest.raises(ParameterError):
            skew_sizes(n=10, k=30)


class TestInstanceFiles:
    """Test instance and ground-truth file formats."""

    @pytest.mark.parametrize("fmt", ["edges", "dimacs"])
    def test_save_and_load(self, temp_dir, fmt):
        instance, _ = generate_clique_union([4, 3, 2], seed=9)
        path = temp_dir / f"instance.{fmt}"
        save_instance(instance, path, fmt)
        assert load_instance(path, fmt) == instance

    def test_edges_file_with_signs_and_comments(self, temp_dir):
        path = temp_dir / "signed.txt"
        path.write_text("# comment\nn 4\n0 1\n1 2 +\n2 3 -\n\n")
        instance = load_instance(path)
        assert instance.edges().tolist() == [[0, 1], [1, 2]]

    @pytest.mark.parametrize(
        "body, line",
        [
            ("0 1\n", 1),
            ("n 3\n0 1\n1 0\n", 3),
            ("n 3\n0 1 +\n0 1 -\n", 3),
            ("n 3\n0 1 +-\n", 2),
            ("n 3\n0 3\n", 2),
            ("n 3\n1 1\n", 2),
            ("n 3\n0 x\n", 2),
        ],
    )
    def test_malformed_edge_files(self, temp_dir, body, line):
        path = temp_dir / "bad.txt"
        path.write_text(body)
        with pytest.raises(InstanceFormatError) as excinfo:
            load_instance(path)
        assert excinfo.value.line == line
        assert f":{line}:" in str(excinfo.value)

    def test_inconsistent_declaration_message(self, temp_dir):
        path = temp_dir / "bad.txt"
        path.write_text("n 3\n0 1 +\n1 0 -\n")
        with pytest.raises(InstanceFormatError, match="inconsistent"):
            load_instance(path)

    def test_missing_file_is_an_os_error(self, temp_dir):
        with pytest.raises(OSError):
            load_instance(temp_dir / "missing.txt")

    def test_unknown_format(self, temp_dir):
        with pytest.raises(ParameterError):
            load_instance(temp_dir / "x.txt", "graphml")

    def test_ground_truth_round_trip(self, temp_dir):
        truth = GroundTruthPartition(np.array([0, 1, 0, 2]))
        path = temp_dir / "truth.txt"
        save_ground_truth(truth, path)
        assert load_ground_truth(path, n=4) == truth

    def test_ground_truth_with_named_clusters(self, temp_dir):
        path = temp_dir / "truth.txt"
        path.write_text("2 red\n0 blue\n1 red\n")
        truth = load_ground_truth(path)
        assert truth.cluster_of.tolist() == [1, 0, 0]

    def test_ground_truth_missing_node(self, temp_dir):
        path = temp_dir / "truth.txt"
        path.write_text("0 a\n2 a\n")
        with pytest.raises(InstanceFormatError):
            load_ground_truth(path, n=3)


if __name__ == "__main__":
    pytest.main([__file__])
