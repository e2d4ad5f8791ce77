"""Reproducing kernels K_alpha(z) = 1/(1 - conj(alpha) z) + 1/(1 - alpha conj(z))."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from harmonic_h2.series import HarmonicSeries


@dataclass(frozen=True)
class KernelPoint:
    alpha: complex

    def __post_init__(self):
        alpha = complex(self.alpha)
        if not abs(alpha) < 1.0:
            raise ValueError(f"kernel point must lie in the open disc, got |alpha| = {abs(alpha)}")
        object.__setattr__(self, "alpha", alpha)


def _alpha(a) -> complex:
    return a.alpha if isinstance(a, KernelPoint) else KernelPoint(a).alpha


def kernel_eval(alpha, z):
    a = _alpha(alpha)
    z = np.asarray(z, dtype=np.complex128)
    out = 1.0 / (1.0 - np.conj(a) * z) + 1.0 / (1.0 - a * np.conj(z))
    return complex(out) if out.ndim == 0 else out


def kernel_series(alpha, N: int = 64) -> HarmonicSeries:
    """Both coefficient sequences are conj(alpha)**n, n = 0..N."""
    c = np.conj(_alpha(alpha)) ** np.arange(N + 1)
    return HarmonicSeries(c, c)


def kernel_norm(alpha) -> float:
    """Closed-form ||K_alpha|| = sqrt(2 / (1 - |alpha|^2))."""
    a = _alpha(alpha)
    return float(np.sqrt(2.0 / (1.0 - abs(a) ** 2)))


def kernel_tail_bound(alpha, N: int) -> float:
    """Sup-norm bound on the truncation error of kernel_series over the closed disc."""
    r = abs(_alpha(alpha))
    return 2.0 * r ** (N + 1) / (1.0 - r)
