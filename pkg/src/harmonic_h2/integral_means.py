"""Integral means M_2^2(f, r) = (1/2pi) int |f(r e^{it})|^2 dt.

Two routes: uniform trapezoid quadrature, and a closed Parseval form. On
the circle |z| = r the Fourier modes of f are a_n r^n (n >= 1),
conj(b_n) r^n (at frequency -n) and a_0 + conj(b_0) at frequency 0, so

    M_2^2(f, r) = |a_0 + conj(b_0)|^2 + sum_{n>=1} (|a_n|^2 + |b_n|^2) r^(2n).

The constant term couples a_0 and b_0, so the r -> 1 limit equals the
coefficient norm squared only when a_0 * b_0 == 0 (e.g. canonical pairs).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from harmonic_h2.series import HarmonicSeries, evaluate, norm_sq


def _check_radius(r):
    if not 0.0 <= r < 1.0:
        raise ValueError(f"radius must lie in [0, 1), got {r!r}")


def min_grid(f: HarmonicSeries) -> int:
    return 4 * f.degree + 1


def integral_mean_quadrature(f: HarmonicSeries, r: float, M: int | None = None) -> float:
    _check_radius(r)
    if M is None:
        M = min_grid(f) + 8
    if M < min_grid(f):
        raise ValueError(f"grid of {M} points aliases |f|^2 for degree {f.degree}; "
                         f"need M >= {min_grid(f)}")
    z = r * np.exp(2j * np.pi * np.arange(M) / M)
    vals = np.abs(evaluate(f, z)) ** 2
    acc = 0.0
    for v in vals:
        acc += v
    return float(acc / M)


def integral_mean_exact(f: HarmonicSeries, r: float) -> float:
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"radius must lie in [0, 1], got {r!r}")
    n = np.arange(1, f.degree + 1)
    const = abs(f.a[0] + np.conj(f.b[0])) ** 2
    rest = (np.abs(f.a[1:]) ** 2 + np.abs(f.b[1:]) ** 2) * r ** (2 * n)
    return float(const + rest.sum())


@dataclass(frozen=True)
class MeanDiscrepancy:
    """Coefficient norm squared vs the boundary limit of the integral mean."""

    coeff_norm_sq: float
    integral_mean_limit: float
    cross_term: float

    @property
    def agrees(self) -> bool:
        return abs(self.coeff_norm_sq - self.integral_mean_limit) <= 1e-12 * max(1.0, self.coeff_norm_sq)


def norm_vs_mean(f: HarmonicSeries) -> MeanDiscrepancy:
    """Compare ||f||^2 with lim_{r->1} M_2^2(f, r); they differ by 2 Re(a_0 b_0)."""
    limit = integral_mean_exact(f, 1.0)
    return MeanDiscrepancy(norm_sq(f), limit, float(2.0 * (f.a[0] * f.b[0]).real))
