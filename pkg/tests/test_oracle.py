from math import comb

import pytest

from intervagg import ContiguousPartition, validate_distribution
from intervagg.errors import InstanceTooLarge, InvalidM
from intervagg.oracle import brute_force, count_partitions, enumerate_partitions

H_P4_M2 = 0.970950594454668638998076063121
H_U10_M3 = 1.570950594454668638998076063121


def test_enumerate_small():
    assert [p.boundaries for p in enumerate_partitions(4, 2)] == [(1,), (2,), (3,)]
    assert [p.boundaries for p in enumerate_partitions(4, 4)] == [(1, 2, 3)]
    assert len(list(enumerate_partitions(10, 3))) == 36


@pytest.mark.parametrize("n", [1, 5, 13, 20])
def test_counts_match_binomial(n):
    for m in range(1, n + 1):
        parts = list(enumerate_partitions(n, m)) if comb(n - 1, m - 1) < 200_000 else None
        if parts is not None:
            assert len(parts) == comb(n - 1, m - 1)
            assert len({p.boundaries for p in parts}) == len(parts)
            assert [p.boundaries for p in parts] == sorted(p.boundaries for p in parts)
            assert all(isinstance(p, ContiguousPartition) and p.m == m for p in parts)
        assert count_partitions(n, m) == comb(n - 1, m - 1)


def test_count_at_25():
    assert sum(1 for _ in enumerate_partitions(25, 4)) == comb(24, 3)


def test_invalid_m():
    with pytest.raises(InvalidM):
        list(enumerate_partitions(3, 4))
    with pytest.raises(InvalidM):
        list(enumerate_partitions(3, 0))


def test_brute_force_examples(p4, uniform10):
    r = brute_force(p4, 2)
    assert r.boundaries == (1,)
    assert r.entropy == pytest.approx(H_P4_M2, abs=1e-12)
    assert brute_force(uniform10, 3).entropy == pytest.approx(H_U10_M3, abs=1e-12)
    assert brute_force(p4, 1).entropy == pytest.approx(0.0, abs=1e-12)
    assert brute_force(p4, 1).algorithm == "oracle"


def test_lexicographic_tie_break(uniform10):
    # (3,6) and (3,7) and (4,7) all give {0.3,0.3,0.4}; the smallest tuple wins
    assert brute_force(uniform10, 3).boundaries == (3, 6)


def test_guard_rail():
    p = validate_distribution([1 / 30] * 30)
    with pytest.raises(InstanceTooLarge):
        brute_force(p, 15)
    with pytest.raises(InstanceTooLarge):
        brute_force(p, 3, max_candidates=100)
