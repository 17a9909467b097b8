"""
Set partitions as restricted-growth strings, and a branch-and-bound
minimizer of weighted pair disagreements over all partitions.
"""

from typing import Iterator, List, Sequence, Tuple

import numpy as np


def bell_number(n: int) -> int:
    """Number of set partitions of n elements (Bell triangle)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def iter_partitions(n: int) -> Iterator[Tuple[int, ...]]:
    """
    All partitions of 0..n-1 as restricted-growth strings, in lexicographic order.

    a[0] = 0 and a[i] <= 1 + max(a[:i]); a[i] is the block of node i.
    """
    if n == 0:
        yield ()
        return
    a = [0] * n
    top = [0] * n
    yield tuple(a)
    while True:
        i = n - 1
        while i > 0 and a[i] == top[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        top[i] = max(top[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            top[j] = top[i]
        yield tuple(a)


def min_disagreement_partition(pos: np.ndarray, neg: np.ndarray) -> Tuple[int, List[int]]:
    """
    Minimize sum over pairs of neg[u,v]*[co-clustered] + pos[u,v]*[split].

    Depth-first over restricted-growth strings with pruning on the running
    cost; the first minimizer in lexicographic order wins ties.
    """
    n = pos.shape[0]
    pos_rows: List[Sequence[int]] = pos.astype(np.int64).tolist()
    neg_rows: List[Sequence[int]] = neg.astype(np.int64).tolist()
    pos_before = [sum(pos_rows[i][:i]) for i in range(n)]

    best_cost = float("inf")
    best: List[int] = []
    rgs = [0] * n
    blocks: List[List[int]] = []

    def descend(i: int, cost: int) -> None:
        nonlocal best_cost, best
        if cost >= best_cost:
            return
        if i == n:
            best_cost = cost
            best = rgs.copy()
            return
        prow, nrow = pos_rows[i], neg_rows[i]
        for b, members in enumerate(blocks):
            joined_pos = 0
            joined_neg = 0
            for j in members:
                joined_pos += prow[j]
                joined_neg += nrow[j]
            rgs[i] = b
            members.append(i)
            descend(i + 1, cost + joined_neg + pos_before[i] - joined_pos)
            members.pop()
        rgs[i] = len(blocks)
        blocks.append([i])
        descend(i + 1, cost + pos_before[i])
        blocks.pop()

    descend(0, 0)
    return int(best_cost), best
