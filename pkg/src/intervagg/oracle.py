"""Exhaustive ground truth: try every contiguous m-partition."""
from __future__ import annotations

import itertools
from math import comb
from typing import Iterator

import numpy as np

from .core import AggregationResult, ContiguousPartition, EPS_CMP, _plogp, make_result, prefix_sums
from .errors import InstanceTooLarge, InvalidM

MAX_CANDIDATES = 10**7
_BATCH = 1 << 16


def _check_m(n, m):
    if not isinstance(m, (int, np.integer)) or m < 1 or m > n:
        raise InvalidM(m, n)


def count_partitions(n: int, m: int) -> int:
    return comb(n - 1, m - 1)


def enumerate_partitions(n: int, m: int) -> Iterator[ContiguousPartition]:
    """Every contiguous m-partition of ``1..n``, boundary tuples in lexicographic order."""
    _check_m(n, m)
    for b in itertools.combinations(range(1, n), m - 1):
        yield ContiguousPartition(n, b)


def _batches(n, m):
    it = itertools.combinations(range(1, n), m - 1)
    while True:
        chunk = list(itertools.islice(it, _BATCH))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64).reshape(len(chunk), m - 1)


def brute_force(p, m: int, max_candidates: int = MAX_CANDIDATES) -> AggregationResult:
    """Entropy-maximal contiguous m-aggregation by full enumeration.

    Among partitions whose entropy is within ``EPS_CMP`` of the maximum, the
    lexicographically smallest boundary tuple wins.
    """
    n = len(p)
    _check_m(n, m)
    total = count_partitions(n, m)
    if total > max_candidates:
        raise InstanceTooLarge(total, max_candidates)
    s = prefix_sums(p)
    values = np.empty(total)
    pos = 0
    for b in _batches(n, m):
        cuts = np.hstack([np.zeros((b.shape[0], 1), np.int64), b,
                          np.full((b.shape[0], 1), n, np.int64)])
        q = s[cuts[:, 1:]] - s[cuts[:, :-1]]
        values[pos:pos + b.shape[0]] = _plogp(q).sum(axis=1)
        pos += b.shape[0]
    best = int(np.flatnonzero(values >= values.max() - EPS_CMP)[0])
    bounds = next(itertools.islice(itertools.combinations(range(1, n), m - 1), best, None))
    return make_result(p, ContiguousPartition(n, bounds), "oracle", s=s)
