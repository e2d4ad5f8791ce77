"""Analytic self-maps of the disc as truncated power series."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from harmonic_h2 import _backend

FAMILIES = ("rotation", "monomial", "moebius", "affine", "general")
SELFMAP_TOL = 1e-9
DEFAULT_SAMPLES = 4096
DEFAULT_DEGREE = 64


class SymbolError(ValueError):
    """Parameters outside the family's domain."""


class SelfMapError(SymbolError):
    """The symbol maps some boundary point outside the closed disc."""

    def __init__(self, msg, witness=None, max_modulus=None):
        super().__init__(msg)
        self.witness = witness
        self.max_modulus = max_modulus


@dataclass(frozen=True, eq=False)
class Symbol:
    coeffs: np.ndarray
    family: str = "general"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128)).copy()
        if not np.all(np.isfinite(c)):
            raise SymbolError("symbol coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        if self.family not in FAMILIES:
            raise SymbolError(f"unknown family {self.family!r}")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def phi0(self) -> complex:
        return complex(self.coeffs[0])

    def tail_bound(self, radius: float = 1.0) -> float:
        """Upper bound on |phi(z) - truncation(z)| for |z| <= radius."""
        if self.family != "moebius":
            return 0.0
        a = abs(self.params["a"])
        M = self.degree
        if a == 0.0:
            return 0.0
        return (1 - a * a) * a**M * radius ** (M + 1) / (1 - a * radius)

    def __call__(self, z):
        """Truncated-series value of phi at z."""
        z = np.asarray(z, dtype=np.complex128)
        out = _backend.horner(self.coeffs, z)
        return complex(out) if out.ndim == 0 else out

    def exact(self, z):
        """Closed-form value where the family has one, else the series."""
        if self.family == "moebius":
            a = self.params["a"]
            z = np.asarray(z, dtype=np.complex128)
            out = (a - z) / (1 - np.conj(a) * z)
            return complex(out) if out.ndim == 0 else out
        return self(z)

    def to_dict(self) -> dict:
        params = {}
        for k, v in self.params.items():
            params[k] = [float(complex(v).real), float(complex(v).imag)] if k != "k" else int(v)
        return {"family": self.family, "params": params,
                "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict, degree: int | None = None, check: bool = True) -> "Symbol":
        """Rebuild from JSON; family parameters win over stored coefficients."""
        family = d.get("family", "general")
        if family == "general":
            coeffs = [complex(*c) if isinstance(c, (list, tuple)) else complex(c)
                      for c in d["coeffs"]]
            return make_symbol("general", check=check, coeffs=coeffs)
        params = {}
        for k, v in d.get("params", {}).items():
            if k == "k":
                params[k] = int(v)
            elif k == "theta":
                params[k] = float(v[0]) if isinstance(v, (list, tuple)) else float(v)
            else:
                params[k] = complex(*v) if isinstance(v, (list, tuple)) else complex(v)
        if degree is None and "coeffs" in d:
            degree = len(d["coeffs"]) - 1
        return make_symbol(family, degree=degree, check=check, **params)

    @classmethod
    def from_json(cls, text: str, degree: int | None = None) -> "Symbol":
        return cls.from_dict(json.loads(text), degree=degree)

    def __repr__(self):
        return f"Symbol(family={self.family!r}, params={self.params!r}, degree={self.degree})"


@dataclass(frozen=True)
class SelfMapCheck:
    ok: bool
    max_modulus: float
    witness: complex | None


def verify_selfmap(s: Symbol, samples: int = DEFAULT_SAMPLES,
                   radius: float | None = None) -> SelfMapCheck:
    """Sample |phi| on a circle and compare against 1.

    The default radius is 1, except for Moebius symbols where it is
    1 - 1e-6. Truncated Moebius series are allowed their geometric tail
    bound on top of the fixed tolerance.
    """
    if radius is None:
        radius = 1.0 - 1e-6 if s.family == "moebius" else 1.0
    samples = max(int(samples), 2 * s.degree + 1)
    z = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    mod = np.abs(_backend.horner(s.coeffs, z))
    j = int(np.argmax(mod))
    max_modulus = float(mod[j])
    ok = max_modulus <= 1.0 + SELFMAP_TOL + s.tail_bound(radius)
    return SelfMapCheck(ok, max_modulus, None if ok else complex(z[j]))


def moebius_coeffs(a: complex, M: int) -> np.ndarray:
    """Taylor coefficients of (a - z)/(1 - conj(a) z) through degree M."""
    c = np.zeros(M + 1, dtype=np.complex128)
    c[0] = a
    if M >= 1:
        ab = np.conj(a)
        c[1:] = (abs(a) ** 2 - 1) * ab ** np.arange(M)
    return c


def make_symbol(family: str, degree: int | None = None, check: bool = True, **params) -> Symbol:
    """Build a symbol of the given family.

    rotation(theta), monomial(alpha, k), moebius(a), affine(a, b),
    general(coeffs). ``degree`` is the truncation degree for Moebius
    symbols (default 64); for the polynomial families it only pads.
    ``check=False`` skips the self-map test (for audits of non-self-maps).
    """
    if family == "rotation":
        theta = float(params["theta"])
        if not math.isfinite(theta):
            raise SymbolError("rotation: theta must be a finite real")
        coeffs = [0.0, np.exp(1j * theta)]
        params = {"theta": theta}
    elif family == "monomial":
        alpha = complex(params.get("alpha", 1.0))
        k = int(params.get("k", 1))
        if k < 1:
            raise SymbolError("monomial: k >= 1 violated")
        if abs(alpha) > 1.0:
            raise SymbolError("monomial: |alpha| <= 1 violated")
        coeffs = np.zeros(k + 1, dtype=np.complex128)
        coeffs[k] = alpha
        params = {"alpha": alpha, "k": k}
    elif family == "moebius":
        a = complex(params["a"])
        if not abs(a) < 1.0:
            raise SymbolError("moebius: |a| < 1 violated")
        M = DEFAULT_DEGREE if degree is None else int(degree)
        coeffs = moebius_coeffs(a, M)
        params = {"a": a}
    elif family == "affine":
        a = complex(params["a"])
        b = complex(params["b"])
        if abs(a) > 1.0:
            raise SymbolError("affine: |a| <= 1 violated")
        if abs(b) > 1.0 - abs(a) + 1e-15:
            raise SymbolError("affine: |b| <= 1 - |a| violated")
        coeffs = [b, a]
        params = {"a": a, "b": b}
    elif family == "general":
        coeffs = np.atleast_1d(np.asarray(params["coeffs"], dtype=np.complex128))
        params = {}
    else:
        raise SymbolError(f"unknown family {family!r}; expected one of {FAMILIES}")

    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if degree is not None and family != "moebius" and degree > coeffs.size - 1:
        coeffs = np.pad(coeffs, (0, degree - coeffs.size + 1))
    s = Symbol(coeffs, family, params)
    if not check:
        return s
    if not abs(s.phi0) < 1.0:
        raise SymbolError(f"{family}: |phi(0)| < 1 violated (|phi(0)| = {abs(s.phi0)!r})")
    check = verify_selfmap(s)
    if not check.ok:
        raise SelfMapError(
            f"{family}: not a self-map of the disc; |phi({check.witness:.6g})| = "
            f"{check.max_modulus:.12g} > 1",
            witness=check.witness, max_modulus=check.max_modulus)
    return s


def parse_symbol(text: str, degree: int | None = None, check: bool = True) -> Symbol:
    """Parse a symbol given as JSON or as shorthand ``family:p1,p2``.

    Shorthand: ``rotation:THETA``, ``monomial:ALPHA,K``, ``moebius:A``,
    ``affine:A,B``, ``general:C0,C1,...``. Complex values use Python
    literal syntax, e.g. ``0.3+0.3j``.
    """
    text = text.strip()
    if text.startswith("{"):
        return Symbol.from_dict(json.loads(text), degree=degree, check=check)
    family, _, rest = text.partition(":")
    vals = [v.strip() for v in rest.split(",") if v.strip()]
    if family == "rotation":
        return make_symbol("rotation", degree=degree, theta=float(vals[0]) if vals else 0.0)
    if family == "monomial":
        alpha = complex(vals[0]) if vals else 1.0
        k = int(vals[1]) if len(vals) > 1 else 1
        return make_symbol("monomial", degree=degree, alpha=alpha, k=k)
    if family == "moebius":
        return make_symbol("moebius", degree=degree, a=complex(vals[0]))
    if family == "affine":
        return make_symbol("affine", degree=degree, a=complex(vals[0]), b=complex(vals[1]))
    if family == "general":
        return make_symbol("general", degree=degree, check=check,
                           coeffs=[complex(v) for v in vals])
    raise SymbolError(f"unknown family {family!r}; expected one of {FAMILIES}")
