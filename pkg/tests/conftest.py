import numpy as np
import pytest
from hypothesis import strategies as st

from intervagg import validate_distribution


def random_distribution(rng, n):
    return validate_distribution(rng.standard_exponential(n), "renormalize")


@st.composite
def distributions(draw, min_n=1, max_n=12):
    """Strictly positive weights with a bounded dynamic range, normalized."""
    n = draw(st.integers(min_n, max_n))
    w = draw(st.lists(st.floats(0.01, 10.0), min_size=n, max_size=n))
    return validate_distribution(w, "renormalize")


@st.composite
def distribution_and_partition(draw, min_n=1, max_n=30):
    from intervagg import ContiguousPartition

    p = draw(distributions(min_n, max_n))
    n = len(p)
    cuts = draw(st.sets(st.integers(1, n - 1), max_size=n - 1)) if n > 1 else set()
    return p, ContiguousPartition(n, tuple(sorted(cuts)))


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


@pytest.fixture
def p4():
    return validate_distribution([0.4, 0.3, 0.2, 0.1])


@pytest.fixture
def uniform10():
    return validate_distribution([0.1] * 10)


# criterion name -> (passed, detail), filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
