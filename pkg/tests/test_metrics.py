import numpy as np
import pytest
from hypothesis import given

from intervagg import (
    dispersion_identity_residual,
    fano_dispersion,
    guessing_entropy,
    majorizes,
    metrics_report,
    mutual_information_view,
)
from intervagg.oracle import enumerate_partitions
from intervagg.core import aggregate

from conftest import distributions, random_distribution


def test_mutual_information_equals_entropy():
    assert mutual_information_view([0.5, 0.5]) == 1.0
    assert mutual_information_view([1.0]) == 0.0
    assert mutual_information_view([0.4, 0.6]) == pytest.approx(0.970950594454668638998, abs=1e-15)


def test_fano_dispersion_examples():
    assert fano_dispersion([0.5, 0.5]) == 0.0
    assert fano_dispersion([0.7, 0.3]) == pytest.approx(0.4, abs=1e-15)
    assert fano_dispersion([1.0]) == 0.0


def test_guessing_entropy_examples():
    assert guessing_entropy([0.5, 0.5]) == 1.5
    assert guessing_entropy([0.7, 0.3]) == pytest.approx(1.3, abs=1e-15)
    assert guessing_entropy([0.3, 0.7]) == pytest.approx(1.3, abs=1e-15)
    assert guessing_entropy([1.0]) == 1.0


def test_identity_examples():
    assert dispersion_identity_residual([0.7, 0.3]) <= 1e-9
    assert dispersion_identity_residual([0.5, 0.5]) <= 1e-9


def test_identity_random_m5(rng):
    for _ in range(1000):
        assert dispersion_identity_residual(rng.dirichlet(np.ones(5))) <= 1e-9


def test_fano_dispersion_chunking_matches_direct(rng):
    q = rng.dirichlet(np.ones(3000))
    direct = np.abs(q[:, None] - q[None, :]).sum() / q.size
    assert fano_dispersion(q) == pytest.approx(direct, rel=1e-12)


@given(distributions(max_n=30))
def test_ranges(q):
    m = len(q)
    assert 1 - 1e-12 <= guessing_entropy(q) <= m + 1e-12
    assert fano_dispersion(q) >= 0
    rep = metrics_report(q)
    assert rep.mutual_information == rep.entropy
    assert rep.identity_residual <= 1e-9


def test_dispersion_argmin_equals_guessing_argmax(rng):
    for _ in range(20):
        n = int(rng.integers(4, 10))
        m = int(rng.integers(2, n))
        p = random_distribution(rng, n)
        parts = list(enumerate_partitions(n, m))
        fano = np.array([fano_dispersion(aggregate(p, c)) for c in parts])
        guess = np.array([guessing_entropy(aggregate(p, c)) for c in parts])
        argmin = set(np.flatnonzero(fano <= fano.min() + 1e-9))
        argmax = set(np.flatnonzero(guess >= guess.max() - 1e-9))
        assert argmin == argmax


def test_guessing_entropy_reverses_majorization(rng):
    for _ in range(300):
        y = rng.dirichlet(np.ones(6) * 0.5)
        x = y.copy()
        i, j = rng.choice(6, 2, replace=False)
        if x[i] < x[j]:
            i, j = j, i
        t = (x[i] - x[j]) * rng.uniform(0, 0.5)
        x[i] -= t
        x[j] += t
        assert majorizes(x, y)
        assert guessing_entropy(x) >= guessing_entropy(y) - 1e-12
