"""Exact maximum-entropy contiguous aggregation by dynamic programming.

``hq[i, j]`` is the largest entropy-like sum of a contiguous ``i``-aggregation
of ``p_1..p_j``::

    hq[1, j] = -s_j log s_j
    hq[i, j] = max_{k=i..j} hq[i-1, k-1] - (s_j - s_{k-1}) log (s_j - s_{k-1})

The fill costs O(n^2 m). Each row is evaluated as a dense (j, k) block with
numpy, chunked over j to bound memory; the arithmetic per cell is unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    AggregationResult,
    ContiguousPartition,
    _plogp,
    make_result,
    prefix_sums,
)
from .errors import InvalidM, TableIncomplete

_CHUNK_CELLS = 1 << 14


@dataclass
class DPTable:
    """1-based tables of shape ``(m + 1, n + 1)``; row and column 0 are padding.

    ``hq`` holds ``-inf`` where ``j < i``. ``choice[i, j]`` is the split index
    ``k`` (first item of the last class) and ``-1`` where undefined.
    """

    hq: np.ndarray
    choice: np.ndarray
    s: np.ndarray

    @property
    def m(self) -> int:
        return self.hq.shape[0] - 1

    @property
    def n(self) -> int:
        return self.hq.shape[1] - 1


def _check_m(n, m):
    if not isinstance(m, (int, np.integer)) or m < 1 or m > n:
        raise InvalidM(m, n)


def fill_table(p, m: int) -> DPTable:
    """Fill ``hq`` and ``choice`` for rows ``1..m`` and every column ``j >= i``."""
    n = len(p)
    _check_m(n, m)
    s = prefix_sums(p)
    hq = np.full((m + 1, n + 1), -np.inf)
    choice = np.full((m + 1, n + 1), -1, dtype=np.int64)
    hq[1, 1:] = _plogp(s[1:])
    choice[1, 1:] = 1
    for i in range(2, m + 1):
        prev = hq[i - 1]
        # k runs over i..n; column c of the block is k = i + c
        ks = np.arange(i, n + 1)
        base = prev[ks - 1]
        left = s[ks - 1]
        rows = max(1, _CHUNK_CELLS // ks.size)
        for j0 in range(i, n + 1, rows):
            js = np.arange(j0, min(n + 1, j0 + rows))
            width = js[-1] - i + 1
            mass = s[js, None] - left[None, :width]
            vals = base[None, :width] + _plogp(np.maximum(mass, 0.0))
            vals[ks[None, :width] > js[:, None]] = -np.inf
            best = np.argmax(vals, axis=1)  # first maximum: leftmost k
            hq[i, js] = vals[np.arange(js.size), best]
            choice[i, js] = best + i
    return DPTable(hq, choice, s)


def backtrack(table: DPTable, m: int, n: int) -> ContiguousPartition:
    """Recover the partition achieving ``hq[m, n]`` by following ``choice``."""
    if m < 1 or m > table.m or n > table.n or n < m:
        raise TableIncomplete(f"table of shape {table.hq.shape} has no cell ({m}, {n})")
    cuts = []
    j = n
    for i in range(m, 1, -1):
        k = int(table.choice[i, j])
        if k < i or k > j or not np.isfinite(table.hq[i, j]):
            raise TableIncomplete(f"cell ({i}, {j}) was never filled")
        cuts.append(k - 1)
        j = k - 1
    return ContiguousPartition(n, tuple(reversed(cuts)))


def solve_exact(p, m: int) -> AggregationResult:
    """Maximum-entropy contiguous ``m``-aggregation of ``p``."""
    n = len(p)
    _check_m(n, m)
    if m == 1:
        return make_result(p, ContiguousPartition(n), "exact", value=0.0)
    if m == n:
        return make_result(p, ContiguousPartition.identity(n), "exact")
    table = fill_table(p, m)
    part = backtrack(table, m, n)
    return make_result(p, part, "exact", s=table.s, value=table.hq[m, n])
