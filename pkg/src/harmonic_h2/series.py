"""Truncated harmonic series f = h + conj(g) stored as coefficient pairs.

The space is modelled on the pair (a, b) of Taylor coefficients of h and g,
not on the pointwise function: ``a=[1], b=[1]`` and ``a=[2], b=[0]`` are the
same function on the disc but different elements here (norms sqrt(2) and 2).
:func:`canonicalize` maps a pair to the representative with ``b[0] == 0``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from harmonic_h2 import _backend


def _as_coeffs(x) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(x, dtype=np.complex128)).ravel()
    if arr.size == 0:
        arr = np.zeros(1, dtype=np.complex128)
    return arr


def _check_finite(*arrays):
    for arr in arrays:
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")


@dataclass(frozen=True, eq=False)
class HarmonicSeries:
    """Coefficient pair (a, b) of f(z) = sum a_n z^n + conj(sum b_n z^n).

    Both arrays are padded to a common length ``degree + 1`` and made
    read-only, so instances can be shared freely.
    """

    a: np.ndarray
    b: np.ndarray

    def __init__(self, a, b=None):
        a = _as_coeffs(a)
        b = _as_coeffs(0.0 if b is None else b)
        n = max(a.size, b.size)
        a = np.pad(a, (0, n - a.size))
        b = np.pad(b, (0, n - b.size))
        _check_finite(a, b)
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def degree(self) -> int:
        return self.a.size - 1

    @classmethod
    def zero(cls, degree: int = 0) -> "HarmonicSeries":
        return cls(np.zeros(degree + 1), np.zeros(degree + 1))

    @classmethod
    def analytic(cls, a) -> "HarmonicSeries":
        return cls(a, None)

    def padded(self, degree: int) -> "HarmonicSeries":
        if degree < self.degree:
            raise ValueError(f"cannot pad degree {self.degree} down to {degree}")
        return HarmonicSeries(np.pad(self.a, (0, degree - self.degree)),
                              np.pad(self.b, (0, degree - self.degree)))

    def truncated(self, degree: int) -> "HarmonicSeries":
        return HarmonicSeries(self.a[: degree + 1], self.b[: degree + 1])

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other: "HarmonicSeries") -> "HarmonicSeries":
        n = max(self.degree, other.degree)
        p, q = self.padded(n), other.padded(n)
        return HarmonicSeries(p.a + q.a, p.b + q.b)

    def __neg__(self) -> "HarmonicSeries":
        return HarmonicSeries(-self.a, -self.b)

    def __sub__(self, other: "HarmonicSeries") -> "HarmonicSeries":
        return self + (-other)

    def scale(self, c: complex) -> "HarmonicSeries":
        """Multiply the represented function by ``c``.

        c*conj(g) = conj(conj(c)*g), so the b-part picks up conj(c).
        """
        return HarmonicSeries(c * self.a, np.conj(c) * self.b)

    def __eq__(self, other):
        if not isinstance(other, HarmonicSeries):
            return NotImplemented
        n = max(self.degree, other.degree)
        p, q = self.padded(n), other.padded(n)
        return bool(np.array_equal(p.a, q.a) and np.array_equal(p.b, q.b))

    __hash__ = None

    def to_dict(self) -> dict:
        return {"a": [[float(c.real), float(c.imag)] for c in self.a],
                "b": [[float(c.real), float(c.imag)] for c in self.b]}

    @classmethod
    def from_dict(cls, d: dict) -> "HarmonicSeries":
        a = [complex(re, im) for re, im in d["a"]]
        b = [complex(re, im) for re, im in d.get("b", [[0.0, 0.0]])]
        return cls(a, b)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "HarmonicSeries":
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        return f"HarmonicSeries(degree={self.degree}, a={self.a.tolist()}, b={self.b.tolist()})"


@dataclass(frozen=True)
class CanonicalizationReport:
    shifted_constant: complex
    norm_before: float
    norm_after: float


def evaluate(f: HarmonicSeries, z):
    """Evaluate f at z (scalar or array) with |z| <= 1."""
    z_arr = np.asarray(z, dtype=np.complex128)
    if not np.all(np.isfinite(z_arr)):
        raise ValueError("evaluation point must be finite")
    if np.any(np.abs(z_arr) > 1.0 + 1e-12):
        raise ValueError("evaluation point outside the closed unit disc")
    out = _backend.horner(f.a, z_arr) + np.conj(_backend.horner(f.b, z_arr))
    return complex(out) if out.ndim == 0 else out


def inner(f: HarmonicSeries, g: HarmonicSeries) -> complex:
    """<f, g> = sum a_n conj(a'_n) + conj(b_n) b'_n.

    The b-slot is conjugate-linear in the first argument; this is the form
    for which <f, K_alpha> = f(alpha) holds with the kernel coefficients of
    :func:`harmonic_h2.kernels.kernel_series`.
    """
    n = min(f.degree, g.degree) + 1
    a1, a2, b1, b2 = f.a[:n], g.a[:n], f.b[:n], g.b[:n]
    # explicit real parts keep <f, f> exactly real; fsum makes it order-free
    re = np.concatenate([a1.real * a2.real + a1.imag * a2.imag,
                         b1.real * b2.real + b1.imag * b2.imag])
    im = np.concatenate([a1.imag * a2.real - a1.real * a2.imag,
                         b1.real * b2.imag - b1.imag * b2.real])
    return complex(math.fsum(re), math.fsum(im))


def norm_sq(f: HarmonicSeries) -> float:
    # same summation as inner(f, f)
    return inner(f, f).real


def norm(f: HarmonicSeries) -> float:
    return float(np.sqrt(norm_sq(f)))


def canonicalize(f: HarmonicSeries) -> tuple[HarmonicSeries, CanonicalizationReport]:
    """Move b_0 into the analytic constant: a_0 += conj(b_0), b_0 = 0."""
    a = f.a.copy()
    b = f.b.copy()
    shift = complex(b[0])
    a[0] += np.conj(shift)
    b[0] = 0.0
    g = HarmonicSeries(a, b)
    return g, CanonicalizationReport(shift, norm(f), norm(g))
