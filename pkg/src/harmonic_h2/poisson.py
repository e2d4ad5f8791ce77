"""Poisson kernel and Poisson/Herglotz extension from sampled boundary data."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from harmonic_h2 import _backend
from harmonic_h2.series import HarmonicSeries

DEFAULT_GRID = 512
AUDIT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class BoundaryGrid:
    """Samples v_j = F(exp(2 pi i j / M)), j = 0..M-1."""

    values: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values, dtype=np.complex128)).copy()
        if v.size < 2:
            raise ValueError("boundary grid needs at least 2 samples")
        if not np.all(np.isfinite(v)):
            raise ValueError("boundary samples must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def M(self) -> int:
        return self.values.size

    @staticmethod
    def nodes(M: int) -> np.ndarray:
        return 2.0 * np.pi * np.arange(M) / M

    @classmethod
    def from_function(cls, func, M: int = DEFAULT_GRID) -> "BoundaryGrid":
        return cls(func(np.exp(1j * cls.nodes(M))))

    @classmethod
    def from_coeffs(cls, c, M: int = DEFAULT_GRID) -> "BoundaryGrid":
        """Boundary samples of the analytic polynomial with coefficients ``c``."""
        return cls(_backend.horner(c, np.exp(1j * cls.nodes(M))))

    @classmethod
    def pair_from_series(cls, f: HarmonicSeries, M: int = DEFAULT_GRID):
        """(h, g) boundary grids of f = h + conj(g)."""
        return cls.from_coeffs(f.a, M), cls.from_coeffs(f.b, M)

    def to_list(self) -> list:
        return [[float(v.real), float(v.imag)] for v in self.values]

    @classmethod
    def from_list(cls, data) -> "BoundaryGrid":
        return cls([complex(*v) if isinstance(v, (list, tuple)) else complex(v) for v in data])

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_json(cls, text: str) -> "BoundaryGrid":
        return cls.from_list(json.loads(text))


def _check_r(r):
    if not 0.0 <= r < 1.0:
        raise ValueError(f"Poisson kernel is singular at r >= 1 (got r = {r!r})")


def poisson_kernel(r: float, x):
    """P_r(x) = (1 - r^2) / (1 - 2 r cos x + r^2)."""
    _check_r(r)
    x = np.asarray(x, dtype=np.float64)
    out = (1.0 - r * r) / (1.0 - 2.0 * r * np.cos(x) + r * r)
    return float(out) if out.ndim == 0 else out


def _combined(h_bnd: BoundaryGrid, g_bnd: BoundaryGrid | None) -> np.ndarray:
    if g_bnd is None:
        return h_bnd.values
    if g_bnd.M != h_bnd.M:
        raise ValueError(f"boundary grids differ in length ({h_bnd.M} vs {g_bnd.M})")
    return h_bnd.values + np.conj(g_bnd.values)


def poisson_extend(h_bnd: BoundaryGrid, g_bnd: BoundaryGrid | None, r: float, t):
    """Trapezoid rule for (1/2pi) int P_r(theta - t) (h + conj(g)) dtheta.

    ``t`` may be a scalar or an array of angles at the same radius.
    """
    _check_r(r)
    v = _combined(h_bnd, g_bnd)
    out = _backend.poisson_apply(v, r, t)
    return complex(out[0]) if np.ndim(t) == 0 else out


def poisson_average(values, r: float, t):
    """Poisson-weighted mean of real samples (used for |h|^2, |g|^2)."""
    _check_r(r)
    out = _backend.poisson_apply(np.asarray(values, dtype=np.complex128), r, t).real
    return float(out[0]) if np.ndim(t) == 0 else out


def herglotz_extend(u_bnd: BoundaryGrid, z):
    """Analytic completion (1/2pi) int (e^{it} + z)/(e^{it} - z) u(e^{it}) dt."""
    if np.any(np.abs(u_bnd.values.imag) > 0):
        raise ValueError("Herglotz extension expects real boundary samples")
    z_arr = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(z_arr) >= 1.0):
        raise ValueError("Herglotz extension requires |z| < 1")
    out = _backend.herglotz_apply(u_bnd.values, z_arr.ravel())
    return complex(out[0]) if z_arr.ndim == 0 else out.reshape(z_arr.shape)


@dataclass(frozen=True)
class PoissonBoundAudit:
    lhs: float
    rhs: float
    ok: bool


def poisson_bound_audit(h_bnd: BoundaryGrid, g_bnd: BoundaryGrid, r: float, t: float) -> PoissonBoundAudit:
    """|f|^2 <= u + v + 2 sqrt(u v) with u, v the Poisson means of |h|^2, |g|^2."""
    lhs = abs(poisson_extend(h_bnd, g_bnd, r, t)) ** 2
    u = poisson_average(np.abs(h_bnd.values) ** 2, r, t)
    v = poisson_average(np.abs(g_bnd.values) ** 2, r, t)
    rhs = u + v + 2.0 * np.sqrt(max(u, 0.0) * max(v, 0.0))
    return PoissonBoundAudit(float(lhs), float(rhs), bool(lhs <= rhs + AUDIT_TOL))
