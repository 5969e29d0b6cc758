import numpy as np
import pytest
from hypothesis import strategies as st

from twoband.band import BandMatrix, Mode

ACCEPTANCE_LINES = []


@st.composite
def band_matrices(draw, max_n=14, max_offset=6, mode=Mode.POSITIVE):
    n = draw(st.integers(1, max_n))
    b = draw(st.integers(1, max_offset))
    k = draw(st.integers(1, max_offset))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    nl, nu = max(0, n - b), max(0, n - k)
    if mode is Mode.COMPLEX:
        vals = rng.uniform(0.5, 2.0, nl + nu) * np.exp(1j * rng.uniform(0, 2 * np.pi, nl + nu))
    elif mode is Mode.NONNEGATIVE:
        vals = rng.uniform(0.5, 2.0, nl + nu) * (rng.random(nl + nu) > 0.2)
    else:
        vals = rng.uniform(0.5, 2.0, nl + nu)
    return BandMatrix(n, b, k, vals[:nl], vals[nl:], mode)


def all_ones(n, b, k):
    return BandMatrix(n, b, k, np.ones(max(0, n - b)), np.ones(max(0, n - k)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
