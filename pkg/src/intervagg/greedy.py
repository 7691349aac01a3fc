"""Linear-time greedy approximations to the maximum-entropy aggregation.

``greedy1`` packs consecutive items into blocks of mass at most 2/m and then
splits composite blocks until exactly m remain. Its entropy is within
2/(e ln 2) bits of the optimum.

``greedy2`` aims for blocks of mass about 1/m to 3/(2m), marks the blocks
that overshoot into (3/(2m), 2/m], and splits the heaviest marked blocks
first. Its additive gap is sqrt(3)/(e ln 2) bits.

Block masses and all threshold tests use prefix-sum differences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    AggregationResult,
    ContiguousPartition,
    make_result,
    prefix_sums,
    sort_desc,
)
from .errors import InvalidM


@dataclass
class SegmentRecord:
    """A block ``start..end`` (1-based, inclusive) of source items."""

    start: int
    end: int
    mass: float
    marked: bool = False

    @property
    def composite(self) -> bool:
        return self.start < self.end


@dataclass
class GreedyDiagnostics:
    phase1_components: int
    splits_performed: int
    k1: int = 0
    k2: int = 0
    k3: int = 0
    k_star: int = 0
    A: float = 0.0
    A1: float = 0.0
    A2: float = 0.0
    B: float = 0.0
    phase1_masses: tuple[float, ...] = field(default=(), repr=False)
    marked_count: int = 0
    segments: tuple[SegmentRecord, ...] = field(default=(), repr=False)


def theorem_constants() -> tuple[float, float]:
    """Additive gaps ``(2/(e ln 2), sqrt(3)/(e ln 2))`` for greedy1 and greedy2."""
    denom = math.e * math.log(2)
    return 2.0 / denom, math.sqrt(3.0) / denom


GAP1, GAP2 = theorem_constants()


def _check_m(n, m):
    if not isinstance(m, (int, np.integer)) or m < 1 or m > n:
        raise InvalidM(m, n)


def _mass(s, start, end):
    return float(s[end] - s[start - 1])


def _size_classes(q, m):
    """k*, A, A1, A2, B of an output vector, split at 2/m and 3/(2m)."""
    q = np.asarray(q, dtype=np.float64)
    big = q > 2.0 / m
    mid = ~big & (q > 1.5 / m)
    small = ~big & ~mid
    qb = q[big]
    return (
        int(big.sum()),
        1.0 - float(qb.sum()),
        float(q[mid].sum()),
        float(q[small].sum()),
        float(np.sum(-qb * np.log2(qb))),
    )


def leveled_vector(q, m: int) -> np.ndarray:
    """Keep the components above 2/m and spread the remaining mass evenly.

    Returns ``(q_[1], ..., q_[k*], A/(m-k*), ..., A/(m-k*))`` with the large
    components in non-increasing order.
    """
    q = sort_desc(q)
    k_star = int(np.sum(q > 2.0 / m))
    head = q[:k_star]
    if k_star == m:
        return head
    level = (1.0 - float(head.sum())) / (m - k_star)
    return np.concatenate([head, np.full(m - k_star, level)])


def _finish(p, s, segments, algorithm, diag, m):
    segments = sorted(segments, key=lambda r: r.start)
    part = ContiguousPartition.from_blocks(len(p), [(r.start, r.end) for r in segments])
    res = make_result(p, part, algorithm, s=s)
    diag.segments = tuple(segments)
    diag.k_star, diag.A, diag.A1, diag.A2, diag.B = _size_classes(res.q, m)
    return res, diag


def _trivial(p, m, algorithm):
    n = len(p)
    s = prefix_sums(p)
    if m == n:
        segs = [SegmentRecord(j, j, _mass(s, j, j)) for j in range(1, n + 1)]
    else:
        segs = [SegmentRecord(1, n, _mass(s, 1, n))]
    diag = GreedyDiagnostics(phase1_components=m, splits_performed=0,
                             phase1_masses=tuple(r.mass for r in segs))
    return _finish(p, s, segs, algorithm, diag, m)


def _split_leftmost(segments, s, need):
    """Detach first items of the leftmost composite blocks until ``need`` splits are done."""
    segments.sort(key=lambda r: r.start)
    out = []
    j = 0
    while need > 0:
        while not segments[j].composite:
            j += 1
        r = segments[j]
        out.append(SegmentRecord(r.start, r.start, _mass(s, r.start, r.start)))
        r.start += 1
        r.mass = _mass(s, r.start, r.end)
        r.marked = False
        need -= 1
    return segments + out


def greedy1(p, m: int) -> tuple[AggregationResult, GreedyDiagnostics]:
    n = len(p)
    _check_m(n, m)
    if m == n or m == 1:
        return _trivial(p, m, "greedy1")
    s = prefix_sums(p)
    cap = 2.0 / m

    segs = []
    j = 1
    while j <= n:
        start = j
        # past the last item the sentinel (3/m) always overflows the cap
        while j < n and s[j + 1] - s[start - 1] <= cap:
            j += 1
        segs.append(SegmentRecord(start, j, _mass(s, start, j)))
        j += 1

    i = len(segs)
    if i > m:
        raise AssertionError(f"phase 1 produced {i} > m={m} blocks")
    diag = GreedyDiagnostics(phase1_components=i, splits_performed=m - i,
                             phase1_masses=tuple(r.mass for r in segs))
    segs = _split_leftmost(segs, s, m - i)
    return _finish(p, s, segs, "greedy1", diag, m)


def greedy2(p, m: int) -> tuple[AggregationResult, GreedyDiagnostics]:
    n = len(p)
    _check_m(n, m)
    if m == n or m == 1:
        return _trivial(p, m, "greedy2")
    s = prefix_sums(p)
    low, mid, cap = 1.0 / m, 1.5 / m, 2.0 / m

    segs = []
    k1 = k2 = k3 = 0
    j = 1
    while j <= n:
        start = j
        while j <= n and s[j] - s[start - 1] <= low:
            j += 1
        if j > n:
            segs.append(SegmentRecord(start, n, _mass(s, start, n)))
            break
        total = s[j] - s[start - 1]
        if total <= mid:
            segs.append(SegmentRecord(start, j, _mass(s, start, j)))
            k1 += 1
        elif total > cap:
            if j > start:
                segs.append(SegmentRecord(start, j - 1, _mass(s, start, j - 1)))
                k2 += 1
            segs.append(SegmentRecord(j, j, _mass(s, j, j)))
            k2 += 1
        else:
            segs.append(SegmentRecord(start, j, _mass(s, start, j), marked=j > start))
            k3 += 1
        j += 1

    i = len(segs)
    if i > m:
        raise AssertionError(f"phase 1 produced {i} > m={m} blocks")
    marked = sorted((r for r in segs if r.marked), key=lambda r: (-r.mass, r.start))
    diag = GreedyDiagnostics(phase1_components=i, splits_performed=m - i,
                             k1=k1, k2=k2, k3=k3, marked_count=len(marked),
                             phase1_masses=tuple(r.mass for r in segs))
    need = m - i
    for r in marked[:need]:
        segs.append(SegmentRecord(r.end, r.end, _mass(s, r.end, r.end)))
        r.end -= 1
        r.mass = _mass(s, r.start, r.end)
        r.marked = False
        need -= 1
    if need:
        segs = _split_leftmost(segs, s, need)
    return _finish(p, s, segs, "greedy2", diag, m)
