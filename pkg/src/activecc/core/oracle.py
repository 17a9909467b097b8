"""
Query oracle: the only path from algorithms to sigma.

Every answered pair counts one query, repeats included. Batches are atomic
with respect to the budget: a batch that does not fit is refused whole and
nothing is charged.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Set, Tuple

import numpy as np

from ..errors import BudgetExhaustedError, ContractError
from .instance import LabeledInstance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleSnapshot:
    queries_issued: int
    budget_remaining: Optional[int]


class QueryOracle:
    """Answers sigma(u, v) from a LabeledInstance and counts queries."""

    def __init__(self, instance: LabeledInstance, budget: Optional[int] = None):
        if budget is not None and budget < 0:
            raise ContractError(f"budget must be nonnegative, got {budget}")
        self.instance = instance
        self.budget = budget
        self.queries_issued = 0

    @property
    def n(self) -> int:
        return self.instance.n

    def _charge(self, count: int) -> None:
        if self.budget is not None and self.queries_issued + count > self.budget:
            raise BudgetExhaustedError(self.queries_issued, self.budget, count)
        self.queries_issued += count

    def _check_nodes(self, us: np.ndarray, vs: np.ndarray) -> None:
        if us.size == 0:
            return
        lo = min(us.min(), vs.min())
        hi = max(us.max(), vs.max())
        if lo < 0 or hi >= self.n:
            raise ContractError(f"query node out of range 0..{self.n - 1}")
        if np.any(us == vs):
            raise ContractError("cannot query a node against itself")

    def query(self, u: int, v: int) -> int:
        """Return sigma(u, v) in {-1, +1}."""
        self._check_nodes(np.array([u]), np.array([v]))
        self._charge(1)
        return 1 if self.instance.matrix[u, v] else -1

    def query_pairs(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        """Labels of the pairs (us[i], vs[i]) as an int8 array of +-1."""
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if us.shape != vs.shape:
            raise ContractError("query_pairs needs arrays of equal shape")
        self._check_nodes(us, vs)
        self._charge(int(us.size))
        return np.where(self.instance.matrix[us, vs], 1, -1).astype(np.int8)

    def query_many(self, pivot: int, nodes: np.ndarray) -> np.ndarray:
        """Labels of (pivot, u) for every u in nodes."""
        nodes = np.asarray(nodes, dtype=np.int64)
        return self.query_pairs(np.full(nodes.shape, pivot, dtype=np.int64), nodes)

    def snapshot(self) -> OracleSnapshot:
        remaining = None if self.budget is None else self.budget - self.queries_issued
        return OracleSnapshot(self.queries_issued, remaining)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, issued={self.queries_issued}, budget={self.budget})"


class MemoizingOracle(QueryOracle):
    """Oracle that charges each distinct pair once; repeats are free."""

    def __init__(self, instance: LabeledInstance, budget: Optional[int] = None):
        super().__init__(instance, budget)
        self._seen: Set[Tuple[int, int]] = set()

    def query_pairs(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if us.shape != vs.shape:
            raise ContractError("query_pairs needs arrays of equal shape")
        self._check_nodes(us, vs)
        keys = {(int(min(u, v)), int(max(u, v))) for u, v in zip(us.ravel(), vs.ravel())}
        fresh = keys - self._seen
        self._charge(len(fresh))
        self._seen |= fresh
        return np.where(self.instance.matrix[us, vs], 1, -1).astype(np.int8)

    def query(self, u: int, v: int) -> int:
        return int(self.query_pairs(np.array([u]), np.array([v]))[0])
