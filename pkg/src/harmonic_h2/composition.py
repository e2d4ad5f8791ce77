"""Composition operator C_phi f = h o phi + conj(g o phi) on truncated series."""
from __future__ import annotations

import numpy as np

from harmonic_h2 import _backend
from harmonic_h2.series import HarmonicSeries
from harmonic_h2.symbols import SelfMapError, Symbol, verify_selfmap

MAX_OUT_DEGREE = 4096


def _trimmed_degree(c) -> int:
    nz = np.flatnonzero(np.asarray(c))
    return int(nz[-1]) if nz.size else 0


def compose_analytic(p, s: Symbol, out_degree: int) -> np.ndarray:
    """Coefficients of p(phi(z)) through ``out_degree`` by Horner-in-series."""
    if out_degree < 0:
        raise ValueError("out_degree must be >= 0")
    p = np.atleast_1d(np.asarray(p, dtype=np.complex128))
    if not np.all(np.isfinite(p)):
        raise ValueError("coefficients must be finite")
    return _backend.compose(p[: _trimmed_degree(p) + 1], s.coeffs, out_degree)


def default_out_degree(s: Symbol, f: HarmonicSeries) -> int:
    deg_f = max(_trimmed_degree(f.a), _trimmed_degree(f.b))
    return min(deg_f * _trimmed_degree(s.coeffs), MAX_OUT_DEGREE)


def apply(s: Symbol, f: HarmonicSeries, out_degree: int | None = None) -> HarmonicSeries:
    """C_phi f. The b-part composes g (not conj(g)) with phi."""
    check = verify_selfmap(s)
    if not check.ok:
        raise SelfMapError(f"symbol is not a self-map: max |phi| = {check.max_modulus!r}",
                           witness=check.witness, max_modulus=check.max_modulus)
    return apply_unchecked(s, f, out_degree)


def apply_unchecked(s: Symbol, f: HarmonicSeries, out_degree: int | None = None) -> HarmonicSeries:
    # used by the blow-up scan, where phi is deliberately not a self-map
    if out_degree is None:
        out_degree = default_out_degree(s, f)
    return HarmonicSeries(compose_analytic(f.a, s, out_degree),
                          compose_analytic(f.b, s, out_degree))
