"""Diagnostic measures reported next to the entropy of an aggregation."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .core import entropy, sort_desc


@dataclass(frozen=True)
class MetricsReport:
    entropy: float
    mutual_information: float
    fano_dispersion: float
    guessing_entropy: float
    identity_residual: float

    def to_dict(self):
        return asdict(self)


def mutual_information_view(q) -> float:
    """I(X; f(X)) for a deterministic aggregation f, which equals H(f(X))."""
    return entropy(q)


def fano_dispersion(q) -> float:
    """Mean absolute pairwise difference ``(1/m) sum_i sum_j |q_i - q_j|``."""
    x = np.asarray(q, dtype=np.float64)
    step = max(1, (1 << 22) // x.size)
    total = 0.0
    for i in range(0, x.size, step):
        total += float(np.abs(x[i:i + step, None] - x[None, :]).sum())
    return total / x.size


def guessing_entropy(q) -> float:
    """Expected number of guesses ``sum_i i * q_[i]`` with q sorted non-increasingly."""
    x = sort_desc(q)
    return float(np.dot(np.arange(1, x.size + 1), x))


def dispersion_identity_residual(q) -> float:
    """Gap between the pairwise dispersion and its closed form in the guessing entropy."""
    m = len(q)
    closed = 2.0 + 2.0 / m - (4.0 / m) * guessing_entropy(q)
    return abs(fano_dispersion(q) - closed)


def metrics_report(q) -> MetricsReport:
    h = entropy(q)
    return MetricsReport(
        entropy=h,
        mutual_information=mutual_information_view(q),
        fano_dispersion=fano_dispersion(q),
        guessing_entropy=guessing_entropy(q),
        identity_residual=dispersion_identity_residual(q),
    )
