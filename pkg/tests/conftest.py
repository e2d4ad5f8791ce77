import numpy as np
import pytest
from hypothesis import strategies as st

from harmonic_h2 import HarmonicSeries


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def rand_series(rng, max_degree=16, analytic_only=False):
    d = int(rng.integers(0, max_degree + 1))
    a = rng.uniform(-1, 1, d + 1) + 1j * rng.uniform(-1, 1, d + 1)
    if analytic_only:
        return HarmonicSeries(a)
    b = rng.uniform(-1, 1, d + 1) + 1j * rng.uniform(-1, 1, d + 1)
    return HarmonicSeries(a, b)


def rand_disc(rng, n, rmax=1.0):
    r = rmax * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, n))


unit = st.floats(-1, 1, allow_nan=False)
cplx = st.builds(complex, unit, unit)


@st.composite
def series_st(draw, max_degree=16):
    n = draw(st.integers(0, max_degree))
    a = draw(st.lists(cplx, min_size=n + 1, max_size=n + 1))
    b = draw(st.lists(cplx, min_size=n + 1, max_size=n + 1))
    return HarmonicSeries(a, b)


@st.composite
def disc_point(draw, rmax=0.8):
    r = draw(st.floats(0, rmax))
    t = draw(st.floats(0, 2 * np.pi))
    return complex(r * np.cos(t), r * np.sin(t))
