"""
Test suite for the query oracle.
"""

import pytest
from pathlib import Path
import sys

import numpy as np

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from activecc.core.instance import LabeledInstance
from activecc.core.oracle import MemoizingOracle, QueryOracle
from activecc.errors import BudgetExhaustedError, ContractError


@pytest.fixture
def path_instance():
    """Path 0-1-2-3."""
    return LabeledInstance.from_edges(4, [(0, 1), (1, 2), (2, 3)])


class TestQueryOracle:
    """Test counting, batching and budgets."""

    def test_single_queries_are_counted(self, path_instance):
        oracle = QueryOracle(path_instance)
        assert oracle.query(0, 1) == 1
        assert oracle.query(1, 0) == 1
        assert oracle.query(0, 2) == -1
        assert oracle.queries_issued == 3

    def test_self_query_is_rejected(self, path_instance):
        oracle = QueryOracle(path_instance)
        with pytest.raises(ContractError):
            oracle.query(2, 2)
        with pytest.raises(ContractError):
            oracle.query(0, 4)
        assert oracle.queries_issued == 0

    def test_query_many(self, path_instance):
        oracle = QueryOracle(path_instance)
        labels = oracle.query_many(1, np.array([0, 2, 3]))
        assert labels.tolist() == [1, 1, -1]
        assert oracle.queries_issued == 3

    def test_query_pairs_counts_repeats(self, path_instance):
        oracle = QueryOracle(path_instance)
        labels = oracle.query_pairs(np.array([0, 0, 3]), np.array([1, 1, 0]))
        assert labels.tolist() == [1, 1, -1]
        assert oracle.queries_issued == 3

    def test_empty_batch(self, path_instance):
        oracle = QueryOracle(path_instance)
        assert oracle.query_many(0, np.array([], dtype=np.int64)).size == 0
        assert oracle.queries_issued == 0

    def test_budget_exhaustion(self, path_instance):
        oracle = QueryOracle(path_instance, budget=2)
        oracle.query(0, 1)
        oracle.query(1, 2)
        with pytest.raises(BudgetExhaustedError) as excinfo:
            oracle.query(2, 3)
        assert excinfo.value.issued == 2
        assert excinfo.value.budget == 2
        assert oracle.queries_issued == 2

    def test_batch_that_does_not_fit_is_not_charged(self, path_instance):
        oracle = QueryOracle(path_instance, budget=3)
        oracle.query(0, 1)
        with pytest.raises(BudgetExhaustedError):
            oracle.query_many(0, np.array([1, 2, 3]))
        assert oracle.queries_issued == 1
        assert oracle.snapshot().budget_remaining == 2
        oracle.query_many(0, np.array([2, 3]))
        assert oracle.snapshot().budget_remaining == 0

    def test_negative_budget(self, path_instance):
        with pytest.raises(ContractError):
            QueryOracle(path_instance, budget=-1)

    def test_snapshot_without_budget(self, path_instance):
        oracle = QueryOracle(path_instance)
        oracle.query(0, 3)
        snapshot = oracle.snapshot()
        assert snapshot.queries_issued == 1
        assert snapshot.budget_remaining is None


    @pytest.mark.parametrize("oracle_class", [QueryOracle, MemoizingOracle])
    def test_answers_match_sigma_on_every_pair(self, oracle_class):
        rng = np.random.default_rng(12)
        for _ in range(20):
            n = int(rng.integers(2, 12))
            upper = np.triu_indices(n, k=1)
            matrix = np.zeros((n, n), dtype=bool)
            matrix[upper] = rng.random(upper[0].size) < 0.4
            instance = LabeledInstance.from_matrix(matrix | matrix.T)
            expected = [instance.sigma(int(u), int(v)) for u, v in zip(*upper)]

            oracle = oracle_class(instance)
            assert [oracle.query(int(u), int(v)) for u, v in zip(*upper)] == expected
            assert [oracle.query(int(v), int(u)) for u, v in zip(*upper)] == expected
            assert oracle.query_pairs(upper[0], upper[1]).tolist() == expected
            assert oracle.query_pairs(upper[1], upper[0]).tolist() == expected


class TestMemoizingOracle:
    """Test the distinct-pair counting variant."""

    def test_repeats_are_free(self, path_instance):
        oracle = MemoizingOracle(path_instance)
        oracle.query(0, 1)
        oracle.query(1, 0)
        oracle.query_pairs(np.array([0, 2, 2]), np.array([1, 3, 3]))
        assert oracle.queries_issued == 2

    def test_budget_counts_distinct_pairs(self, path_instance):
        oracle = MemoizingOracle(path_instance, budget=1)
        assert oracle.query(2, 3) == 1
        assert oracle.query(3, 2) == 1
        with pytest.raises(BudgetExhaustedError):
            oracle.query(0, 1)


if __name__ == "__main__":
    pytest.main([__file__])
