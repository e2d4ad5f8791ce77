import numpy as np
import pytest
from scipy.integrate import quad

from harmonic_h2 import HarmonicSeries, canonicalize, evaluate, norm
from harmonic_h2.integral_means import (integral_mean_exact, integral_mean_quadrature,
                                        norm_vs_mean)

from conftest import rand_series


def brute_mean(f, r):
    """Adaptive quadrature of (1/2pi) int |f(r e^{it})|^2 dt."""
    val, _ = quad(lambda t: abs(evaluate(f, r * np.exp(1j * t))) ** 2, 0, 2 * np.pi,
                  epsabs=1e-13, epsrel=1e-13, limit=200)
    return val / (2 * np.pi)


def test_zero():
    assert integral_mean_quadrature(HarmonicSeries([0]), 0.4) == 0
    assert integral_mean_exact(HarmonicSeries([0]), 0.4) == 0


def test_constant_two_representations():
    f = HarmonicSeries([1], [1])
    for r in (0, 0.5, 0.99):
        assert integral_mean_quadrature(f, r) == pytest.approx(4, abs=1e-14)
        assert integral_mean_exact(f, r) == 4
    d = norm_vs_mean(f)
    assert d.coeff_norm_sq == 2 and d.integral_mean_limit == 4 and d.cross_term == 2
    assert not d.agrees


def test_z_plus_zbar_at_half():
    f = HarmonicSeries([0, 1], [0, 1])
    assert brute_mean(f, 0.5) == pytest.approx(0.5, abs=1e-12)
    assert integral_mean_quadrature(f, 0.5) == pytest.approx(0.5, abs=1e-15)
    assert integral_mean_exact(f, 0.5) == pytest.approx(0.5, abs=1e-15)


def test_aliasing_guard():
    f = HarmonicSeries([0, 0, 0, 1])
    with pytest.raises(ValueError, match="alias"):
        integral_mean_quadrature(f, 0.5, 12)
    integral_mean_quadrature(f, 0.5, 13)


def test_exact_matches_adaptive_quadrature(rng):
    for _ in range(5):
        f = rand_series(rng, 6)
        for r in (0.2, 0.8):
            assert integral_mean_exact(f, r) == pytest.approx(brute_mean(f, r), abs=1e-10)


def test_oracle_equivalence(rng):
    for _ in range(100):
        f = rand_series(rng, 16)
        for r in (0.0, 0.3, 0.7, 0.9):
            q = integral_mean_quadrature(f, r, 4 * f.degree + 9)
            assert abs(q - integral_mean_exact(f, r)) <= 1e-10


def test_monotone_in_r(rng):
    rs = np.linspace(0, 1, 41)
    for _ in range(20):
        f = rand_series(rng, 12)
        vals = [integral_mean_exact(f, r) for r in rs]
        assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_analytic_limit_equals_norm(rng):
    for _ in range(20):
        f = rand_series(rng, 12, analytic_only=True)
        assert integral_mean_exact(f, 1.0) == pytest.approx(norm(f) ** 2, rel=1e-14)


def test_canonical_limit_equals_norm(rng):
    for _ in range(20):
        f, _ = canonicalize(rand_series(rng, 12))
        assert norm_vs_mean(f).agrees
