"""Numerics for the harmonic Hardy space H^2_h(D) and composition operators on it."""
from harmonic_h2._backend import BACKEND
from harmonic_h2.composition import apply, compose_analytic
from harmonic_h2.integral_means import integral_mean_exact, integral_mean_quadrature
from harmonic_h2.kernels import KernelPoint, kernel_eval, kernel_norm, kernel_series
from harmonic_h2.operator import (
    adjoint_on_kernel,
    audit_claims,
    composition_matrix,
    norm_bounds,
    operator_norm_estimate,
    recover_symbol,
)
from harmonic_h2.poisson import (
    BoundaryGrid,
    herglotz_extend,
    poisson_bound_audit,
    poisson_extend,
    poisson_kernel,
)
from harmonic_h2.series import HarmonicSeries, canonicalize, evaluate, inner, norm
from harmonic_h2.symbols import Symbol, make_symbol, parse_symbol, verify_selfmap

__version__ = "0.1.0"
