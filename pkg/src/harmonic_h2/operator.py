"""Truncated matrices of C_phi, norm estimates, norm bounds and claim audits.

In coordinates (a_0..a_N, beta_0..beta_N) with beta_n = conj(b_n) the
module inner product is the standard one and C_phi acts block-diagonally
as diag(A, conj(A)), where column n of A holds the coefficients of phi^n.
Adjoints are therefore ordinary conjugate transposes of the blocks.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from harmonic_h2 import _backend
from harmonic_h2.composition import apply_unchecked
from harmonic_h2.kernels import kernel_norm, kernel_series
from harmonic_h2.series import HarmonicSeries, inner, norm
from harmonic_h2.symbols import SelfMapError, Symbol, verify_selfmap

POWER_MAX_ITER = 10_000
POWER_TOL = 1e-12
ISOMETRY_TOL = 1e-9
BOUND_SLACK = 1e-12   # relative roundoff allowance when comparing sigma_max to bounds
RECOVERY_TOL = 1e-6
BLOWUP_T = (0.9, 0.99, 0.999)
BLOWUP_DEGREE = 512


class ConvergenceWarning(RuntimeWarning):
    pass


@dataclass(frozen=True, eq=False)
class CompositionMatrix:
    A: np.ndarray
    N: int
    symbol: Symbol | None = None

    def full(self) -> np.ndarray:
        """diag(A, conj(A)) acting on (a, beta) coordinates."""
        Z = np.zeros_like(self.A)
        return np.block([[self.A, Z], [Z, np.conj(self.A)]])

    def apply(self, f: HarmonicSeries) -> HarmonicSeries:
        f = f.padded(self.N) if f.degree < self.N else f.truncated(self.N)
        return HarmonicSeries(self.A @ f.a, self.A @ f.b)

    def adjoint_apply(self, f: HarmonicSeries) -> HarmonicSeries:
        f = f.padded(self.N) if f.degree < self.N else f.truncated(self.N)
        a = self.A.conj().T @ f.a
        beta = self.A.T @ np.conj(f.b)
        return HarmonicSeries(a, np.conj(beta))


def _symbol_coeffs(s: Symbol, N: int) -> np.ndarray:
    c = s.coeffs[: N + 1]
    return np.pad(c, (0, N + 1 - c.size))


def composition_matrix(s: Symbol, N: int = 64, check: bool = True) -> CompositionMatrix:
    if check:
        chk = verify_selfmap(s)
        if not chk.ok:
            raise SelfMapError(f"symbol is not a self-map: max |phi| = {chk.max_modulus!r}",
                               witness=chk.witness, max_modulus=chk.max_modulus)
    return CompositionMatrix(_backend.power_matrix(_symbol_coeffs(s, N), N), N, s)


@dataclass(frozen=True)
class PowerIterationResult:
    sigma_max: float
    iterations: int
    converged: bool
    last: tuple


def power_iteration(A, iterations: int = POWER_MAX_ITER, tolerance: float = POWER_TOL) -> PowerIterationResult:
    """Largest singular value of A by power iteration on A^H A.

    Starts from the normalised all-ones vector and stops once the Rayleigh
    quotient ||A x||^2 changes by less than ``tolerance`` (relative).
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    A = np.asarray(A, dtype=np.complex128)
    n = A.shape[1]
    x = np.ones(n, dtype=np.complex128) / math.sqrt(n)
    prev = None
    rq = 0.0
    for it in range(1, iterations + 1):
        y = A @ x
        # divide by |x|^2 so unitary A gives exactly 1
        rq = float(np.vdot(y, y).real / np.vdot(x, x).real)
        if prev is not None and abs(rq - prev) <= tolerance * rq:
            return PowerIterationResult(math.sqrt(rq), it, True, (prev, rq))
        z = A.conj().T @ y
        nz = np.linalg.norm(z)
        if nz == 0.0:
            return PowerIterationResult(0.0, it, True, (prev, rq))
        x = z / nz
        prev = rq
    return PowerIterationResult(math.sqrt(rq), iterations, False, (prev, rq))


def operator_norm_estimate(m, iterations: int = POWER_MAX_ITER, tolerance: float = POWER_TOL) -> float:
    A = m.A if isinstance(m, CompositionMatrix) else m
    res = power_iteration(A, iterations, tolerance)
    if not res.converged:
        warnings.warn(f"power iteration did not converge in {iterations} iterations; "
                      f"last Rayleigh quotients {res.last}", ConvergenceWarning, stacklevel=2)
    return res.sigma_max


@dataclass(frozen=True)
class BoundReport:
    lower: float
    upper_tight: float
    upper_loose: float
    sigma_max: float
    N: int

    def sandwiched(self) -> bool:
        return (self.lower * (1 - BOUND_SLACK) <= self.sigma_max
                <= self.upper_tight * (1 + BOUND_SLACK))


def closed_form_bounds(phi0_abs: float) -> tuple[float, float, float]:
    """(1/sqrt(1-r^2), 2 sqrt((1+r)/(1-r)), 4/sqrt(1-r^2)) at r = |phi(0)|."""
    r = float(phi0_abs)
    if not 0.0 <= r < 1.0:
        raise ValueError(f"bounds need |phi(0)| < 1, got {r!r}")
    return (1.0 / math.sqrt(1 - r * r),
            2.0 * math.sqrt((1 + r) / (1 - r)),
            4.0 / math.sqrt(1 - r * r))


def norm_bounds(s: Symbol, N: int = 64) -> BoundReport:
    lower, tight, loose = closed_form_bounds(abs(s.phi0))
    sigma = operator_norm_estimate(composition_matrix(s, N))
    return BoundReport(lower, tight, loose, sigma, N)


@dataclass(frozen=True)
class AdjointResult:
    image: HarmonicSeries
    target: HarmonicSeries
    residual: float


def adjoint_on_kernel(s: Symbol, alpha, N: int = 64) -> AdjointResult:
    """Compare C_phi^* K_alpha with K_{phi(alpha)} on degree-N truncations."""
    alpha = complex(alpha)
    if abs(alpha) > 0.8:
        raise ValueError("adjoint_on_kernel expects |alpha| <= 0.8")
    m = composition_matrix(s, N)
    image = m.adjoint_apply(kernel_series(alpha, N))
    target = kernel_series(s.exact(alpha), N)
    return AdjointResult(image, target, norm(image - target))


@dataclass(frozen=True)
class RecoveryResult:
    phi_samples: np.ndarray
    residual: float
    is_composition: bool
    outside_disc: list = field(default_factory=list)


def _probe_set():
    return [
        HarmonicSeries([1.0]),
        HarmonicSeries([0.0, 1.0]),
        HarmonicSeries([0.0], [0.0, 1.0]),
        HarmonicSeries([0.0, 0.0, 1.0]),
        HarmonicSeries([0.5, -0.25j, 0.0, 0.3], [0.0, 0.2j, 0.1]),
    ]


def _apply_blocks(Ta, Tb, f: HarmonicSeries) -> HarmonicSeries:
    N = Ta.shape[1] - 1
    f = f.padded(N) if f.degree < N else f.truncated(N)
    return HarmonicSeries(Ta @ f.a, Tb @ f.b)


def recover_symbol(Ta, Tb, grid, tol: float = RECOVERY_TOL) -> RecoveryResult:
    """Test whether the block operator (Ta on a, Tb on b) is a composition operator.

    phi is read off the analytic part of T(z + conj(z)); each probe f'
    must then satisfy <T f', K_alpha> = f'(phi(alpha)) on the grid.
    """
    Ta = np.asarray(Ta, dtype=np.complex128)
    Tb = np.asarray(Tb, dtype=np.complex128)
    if Ta.shape != Tb.shape or Ta.shape[0] != Ta.shape[1] or Ta.shape[0] < 2:
        raise ValueError("T must be given as two equal square blocks of size >= 2")
    if not (np.all(np.isfinite(Ta)) and np.all(np.isfinite(Tb))):
        raise ValueError("operator entries must be finite")
    N = Ta.shape[0] - 1
    grid = np.atleast_1d(np.asarray(grid, dtype=np.complex128))
    if np.any(np.abs(grid) > 0.8 + 1e-15):
        raise ValueError("grid points must satisfy |alpha| <= 0.8")

    g = _apply_blocks(Ta, Tb, HarmonicSeries([0.0, 1.0], [0.0, 1.0]))
    phi = _backend.horner(g.a, grid)
    outside = [complex(a) for a, p in zip(grid, phi) if abs(p) >= 1.0]

    residual = 0.0
    for probe in _probe_set():
        Tf = _apply_blocks(Ta, Tb, probe)
        expected = _backend.horner(probe.a, phi) + np.conj(_backend.horner(probe.b, phi))
        for alpha, want in zip(grid, expected):
            got = inner(Tf, kernel_series(alpha, N))
            residual = max(residual, abs(got - want))
    return RecoveryResult(phi, float(residual), bool(residual <= tol and not outside), outside)


@dataclass
class AuditReport:
    symbol: dict
    ratios: list
    sigma_max: float | None
    lower: float | None
    upper_tight: float | None
    upper_loose: float | None
    flags: list
    blowup: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {"symbol": self.symbol, "ratios": self.ratios, "sigma_max": self.sigma_max,
             "lower": self.lower, "upper_tight": self.upper_tight,
             "upper_loose": self.upper_loose, "flags": self.flags}
        if self.blowup:
            d["blowup"] = self.blowup
        return d


def _blowup_scan(s: Symbol, witness: complex) -> list:
    w = s(witness)
    rows = []
    for t in BLOWUP_T:
        alpha = t * w / abs(w) ** 2
        K = kernel_series(alpha, BLOWUP_DEGREE)
        CK = apply_unchecked(s, K, out_degree=BLOWUP_DEGREE)
        nCK = norm(CK)
        rows.append({"t": t, "alpha": [alpha.real, alpha.imag],
                     "norm_CK": nCK, "norm_K": kernel_norm(alpha),
                     "ratio": nCK / kernel_norm(alpha)})
    return rows


def audit_claims(s: Symbol, probes, N: int = 64) -> AuditReport:
    """Probe-norm ratios, bound check and (for non-self-maps) a kernel blow-up scan.

    Never raises on a failed claim; the outcome is carried in ``flags``.
    """
    probes = list(probes)
    if not probes:
        raise ValueError("audit needs at least one probe")
    chk = verify_selfmap(s)
    ratios = [norm(apply_unchecked(s, f)) / norm(f) for f in probes]
    flags = []
    flags.append("ISOMETRY_ON_PROBES" if all(abs(q - 1) <= ISOMETRY_TOL for q in ratios)
                 else "NON_ISOMETRY")
    lower = tight = loose = sigma = None
    blowup = []
    if abs(s.phi0) < 1.0:
        lower, tight, loose = closed_form_bounds(abs(s.phi0))
        sigma = operator_norm_estimate(composition_matrix(s, N, check=False))
        ok = lower * (1 - BOUND_SLACK) <= sigma <= tight * (1 + BOUND_SLACK)
        flags.append("WITHIN_BOUNDS" if ok else "OUTSIDE_BOUNDS")
    if chk.ok:
        flags.append("SELF_MAP")
    else:
        flags.append("NOT_SELF_MAP")
        blowup = _blowup_scan(s, chk.witness)
    return AuditReport(s.to_dict(), ratios, sigma, lower, tight, loose, flags, blowup)
