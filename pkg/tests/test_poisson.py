import json

import numpy as np
import pytest

from harmonic_h2 import HarmonicSeries, evaluate
from harmonic_h2.poisson import (BoundaryGrid, herglotz_extend, poisson_bound_audit,
                                 poisson_extend, poisson_kernel)

from conftest import rand_disc, rand_series


def test_kernel_examples():
    assert poisson_kernel(0, 1.234) == 1
    assert poisson_kernel(0.5, 0) == pytest.approx(3.0, abs=1e-15)
    assert poisson_kernel(0.5, 0) == pytest.approx((1 + 0.5) / (1 - 0.5), abs=1e-15)
    with pytest.raises(ValueError):
        poisson_kernel(1.0, 0.3)


@pytest.mark.parametrize("r", [0.0, 0.2, 0.5, 0.8, 0.9])
def test_discrete_normalization(r):
    x = BoundaryGrid.nodes(512)
    assert abs(np.mean(poisson_kernel(r, x)) - 1) <= 1e-12


def test_positive_and_even(rng):
    for r in rng.uniform(0, 0.999, 20):
        x = rng.uniform(-10, 10, 50)
        assert np.all(poisson_kernel(r, x) > 0)
        np.testing.assert_array_equal(poisson_kernel(r, x), poisson_kernel(r, -x))


def test_boundary_z_extends_to_z():
    h = BoundaryGrid.from_coeffs([0, 1], 256)
    g = BoundaryGrid(np.zeros(256))
    for r in (0.0, 0.3, 0.9):
        for t in (0.0, 1.0, 4.0):
            assert abs(poisson_extend(h, g, r, t) - r * np.exp(1j * t)) <= 1e-10


def test_r_zero_is_mean(rng):
    h = BoundaryGrid(rng.normal(size=100) + 1j * rng.normal(size=100))
    g = BoundaryGrid(rng.normal(size=100) + 1j * rng.normal(size=100))
    want = np.mean(h.values + np.conj(g.values))
    assert abs(poisson_extend(h, g, 0.0, 0.7) - want) <= 1e-15


def test_constants_reproduce():
    one = BoundaryGrid(np.ones(512))
    for r, t in ((0.1, 0.0), (0.6, 2.0), (0.9, 5.0)):
        assert abs(poisson_extend(one, one, r, t) - 2) <= 1e-12


def test_mismatched_grids():
    with pytest.raises(ValueError):
        poisson_extend(BoundaryGrid(np.ones(8)), BoundaryGrid(np.ones(9)), 0.5, 0)


def test_series_consistency(rng):
    for _ in range(20):
        f = rand_series(rng, 12)
        # trapezoid error is O(r^(M - deg)); 4*deg+9 alone is too coarse at r = 0.9
        M = max(4 * f.degree + 9, 512)
        h, g = BoundaryGrid.pair_from_series(f, M)
        for z in rand_disc(rng, 5, 0.9):
            got = poisson_extend(h, g, abs(z), np.angle(z))
            assert abs(got - evaluate(f, z)) <= 1e-9


def test_vectorized_targets():
    h = BoundaryGrid.from_coeffs([0, 1], 128)
    t = np.linspace(0, 6, 9)
    np.testing.assert_allclose(poisson_extend(h, None, 0.5, t), 0.5 * np.exp(1j * t), atol=1e-12)


def test_herglotz_cos():
    u = BoundaryGrid(np.cos(BoundaryGrid.nodes(256)))
    for z in (0.0, 0.3 + 0.2j, -0.8j):
        assert abs(herglotz_extend(u, z) - z) <= 1e-10


def test_herglotz_constant_and_center(rng):
    one = BoundaryGrid(np.ones(64))
    assert abs(herglotz_extend(one, 0.5 - 0.1j) - 1) <= 1e-12
    u = BoundaryGrid(rng.normal(size=64))
    assert abs(herglotz_extend(u, 0.0).imag) <= 1e-15


def test_herglotz_real_part_is_poisson(rng):
    for _ in range(10):
        c = rng.normal(size=6) + 1j * rng.normal(size=6)
        u = BoundaryGrid(BoundaryGrid.from_coeffs(c, 512).values.real)
        for z in rand_disc(rng, 5, 0.9):
            assert abs(herglotz_extend(u, z).real - poisson_extend(u, None, abs(z), np.angle(z)).real) <= 1e-10


def test_herglotz_domain():
    with pytest.raises(ValueError):
        herglotz_extend(BoundaryGrid(np.ones(8)), 1.0)
    with pytest.raises(ValueError):
        herglotz_extend(BoundaryGrid(np.ones(8) * 1j), 0.1)


def test_bound_audit_examples():
    h = BoundaryGrid.from_coeffs([0, 1], 512)
    rep = poisson_bound_audit(h, BoundaryGrid(np.zeros(512)), 0.5, 0.3)
    assert rep.ok
    rep = poisson_bound_audit(h, h, 0.7, 0.0)
    assert rep.lhs == pytest.approx(1.96, abs=1e-12)
    assert rep.rhs == pytest.approx(4.0, abs=1e-12)
    assert rep.ok


def test_bound_audit_sweep(rng):
    for _ in range(100):
        f = rand_series(rng, 8)
        h, g = BoundaryGrid.pair_from_series(f, 512)
        assert poisson_bound_audit(h, g, rng.uniform(0, 0.9), rng.uniform(0, 2 * np.pi)).ok


def test_grid_json_roundtrip():
    g = BoundaryGrid([1 + 2j, 3, -1j])
    assert json.loads(g.to_json()) == [[1.0, 2.0], [3.0, 0.0], [0.0, -1.0]]
    np.testing.assert_array_equal(BoundaryGrid.from_json(g.to_json()).values, g.values)
