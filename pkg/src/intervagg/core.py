"""Probability vectors, entropy, prefix sums, contiguous partitions, majorization.

Entropies are in bits everywhere. Aggregated masses are always taken as
differences of prefix sums so that every solver sees identical values for
the same block.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ComponentOutOfRange,
    EmptyInput,
    LengthMismatch,
    NonPositiveComponent,
    SumMismatch,
    SumOutOfTolerance,
)

EPS_SUM = 1e-9
EPS_CMP = 1e-12

ALGORITHMS = ("exact", "greedy1", "greedy2", "oracle")


class ProbabilityVector:
    """Strictly positive weights summing to one.

    Build instances with :func:`validate_distribution`; the constructor
    trusts its input and only freezes a float64 copy.
    """

    __slots__ = ("weights",)

    def __init__(self, weights):
        arr = np.array(weights, dtype=np.float64)
        arr.setflags(write=False)
        self.weights = arr

    def __len__(self):
        return self.weights.shape[0]

    def __getitem__(self, i):
        return self.weights[i]

    def __iter__(self):
        return iter(self.weights.tolist())

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.weights
        return self.weights.astype(dtype)

    def __eq__(self, other):
        if isinstance(other, ProbabilityVector):
            return np.array_equal(self.weights, other.weights)
        return NotImplemented

    def __hash__(self):
        return hash(self.weights.tobytes())

    def __repr__(self):
        return f"ProbabilityVector({self.weights.tolist()!r})"

    def tolist(self) -> list[float]:
        return self.weights.tolist()


def validate_distribution(raw: Iterable[float], mode: str = "strict",
                          eps_sum: float = EPS_SUM) -> ProbabilityVector:
    """Turn raw weights into a :class:`ProbabilityVector`.

    ``mode="strict"`` accepts the weights unchanged if they are all positive
    and sum to one within ``eps_sum``. ``mode="renormalize"`` divides by the
    total instead, which is how histogram counts become a distribution.
    """
    if mode not in ("strict", "renormalize"):
        raise ValueError(f"unknown validation mode {mode!r}")
    arr = np.asarray(list(raw) if not isinstance(raw, np.ndarray) else raw, dtype=np.float64)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size == 0:
        raise EmptyInput()
    bad = np.flatnonzero(~(arr > 0))  # also catches NaN
    if bad.size:
        i = int(bad[0])
        raise NonPositiveComponent(i + 1, float(arr[i]))
    if not np.all(np.isfinite(arr)):
        i = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise ComponentOutOfRange(i + 1, float(arr[i]))
    total = float(np.sum(arr))
    if mode == "renormalize":
        return ProbabilityVector(arr / total)
    if abs(total - 1.0) > eps_sum:
        raise SumOutOfTolerance(total, eps_sum)
    return ProbabilityVector(arr)


def _plogp(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = -x[pos] * np.log2(x[pos])
    return out


def entropy(v) -> float:
    """Shannon entropy of a probability vector, in bits."""
    w = np.asarray(v, dtype=np.float64)
    return float(np.sum(_plogp(w)))


def entropy_like_sum(w: Sequence[float], eps_sum: float = EPS_SUM) -> float:
    """``-sum w_i log2 w_i`` for a sub-probability vector with entries in (0, 1]."""
    arr = np.asarray(w, dtype=np.float64).reshape(-1)
    out = np.flatnonzero(~((arr > 0) & (arr <= 1)))
    if out.size:
        i = int(out[0])
        raise ComponentOutOfRange(i + 1, float(arr[i]))
    if arr.sum() > 1 + eps_sum:
        raise ComponentOutOfRange(0, float(arr.sum()))
    return float(np.sum(_plogp(arr)))


def prefix_sums(p) -> np.ndarray:
    """Running sums ``(0, p_1, p_1 + p_2, ..., s_n)`` of length ``n + 1``."""
    w = np.asarray(p, dtype=np.float64)
    s = np.empty(w.shape[0] + 1)
    s[0] = 0.0
    np.cumsum(w, out=s[1:])
    return s


@dataclass(frozen=True)
class ContiguousPartition:
    """Cut points ``0 = i_0 < i_1 < ... < i_m = n``; only the inner cuts are stored.

    Class ``j`` (1-based) covers source items ``i_{j-1} + 1 .. i_j``.
    """

    n: int
    boundaries: tuple[int, ...] = ()

    def __post_init__(self):
        b = tuple(int(x) for x in self.boundaries)
        object.__setattr__(self, "boundaries", b)
        if self.n < 1:
            raise ValueError(f"partition of n={self.n} items")
        prev = 0
        for x in b:
            if not prev < x < self.n:
                raise ValueError(f"boundaries {b} are not strictly increasing inside (0, {self.n})")
            prev = x

    @property
    def m(self) -> int:
        return len(self.boundaries) + 1

    @property
    def cuts(self) -> tuple[int, ...]:
        """Full index sequence including ``i_0 = 0`` and ``i_m = n``."""
        return (0, *self.boundaries, self.n)

    def blocks(self) -> list[tuple[int, int]]:
        """1-based inclusive ``(start, end)`` pairs, left to right."""
        c = self.cuts
        return [(c[j] + 1, c[j + 1]) for j in range(self.m)]

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[tuple[int, int]]) -> ContiguousPartition:
        blocks = sorted(blocks)
        expect = 1
        for start, end in blocks:
            if start != expect or end < start:
                raise ValueError(f"blocks {blocks} do not tile 1..{n}")
            expect = end + 1
        if expect != n + 1:
            raise ValueError(f"blocks {blocks} do not tile 1..{n}")
        return cls(n, tuple(end for _, end in blocks[:-1]))

    @classmethod
    def identity(cls, n: int) -> ContiguousPartition:
        return cls(n, tuple(range(1, n)))


@dataclass(frozen=True)
class AggregationResult:
    partition: ContiguousPartition
    q: ProbabilityVector
    entropy: float
    algorithm: str

    @property
    def boundaries(self) -> tuple[int, ...]:
        return self.partition.boundaries


def aggregate(p, partition: ContiguousPartition, s: np.ndarray | None = None) -> ProbabilityVector:
    """Block masses ``q_j = s_{i_j} - s_{i_{j-1}}`` of ``p`` under ``partition``.

    ``s`` may carry precomputed prefix sums of ``p``.
    """
    n = len(p)
    if partition.n != n:
        raise LengthMismatch(partition.n, n)
    if s is None:
        s = prefix_sums(p)
    cuts = np.asarray(partition.cuts)
    return ProbabilityVector(s[cuts[1:]] - s[cuts[:-1]])


def make_result(p, partition: ContiguousPartition, algorithm: str,
                s: np.ndarray | None = None, value: float | None = None) -> AggregationResult:
    q = aggregate(p, partition, s)
    return AggregationResult(partition, q, entropy(q) if value is None else float(value), algorithm)


def sort_desc(x) -> np.ndarray:
    """Non-increasing order; stable for ties."""
    a = np.asarray(x, dtype=np.float64).reshape(-1)
    return a[np.argsort(-a, kind="stable")]


def majorizes(a, b, eps_sum: float = EPS_SUM, eps_cmp: float = EPS_CMP) -> bool:
    """Return True when ``a`` is majorized by ``b`` (``a ⪯ b``).

    Both vectors are sorted non-increasingly and the shorter one is padded
    with zeros; every partial sum of ``a`` must then be at most the matching
    partial sum of ``b`` (up to ``eps_cmp``).
    """
    x = sort_desc(a)
    y = sort_desc(b)
    for vec in (x, y):
        neg = np.flatnonzero(vec < 0)
        if neg.size:
            raise ComponentOutOfRange(int(neg[0]) + 1, float(vec[neg[0]]))
    sx, sy = float(x.sum()), float(y.sum())
    if abs(sx - sy) > eps_sum:
        raise SumMismatch(sx, sy)
    size = max(x.size, y.size)
    x = np.pad(x, (0, size - x.size))
    y = np.pad(y, (0, size - y.size))
    return bool(np.all(np.cumsum(x) <= np.cumsum(y) + eps_cmp))
