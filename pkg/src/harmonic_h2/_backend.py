"""Pick the compiled kernels when importable, else the numpy fallback."""
import os

import numpy as np

if os.environ.get("HARMONIC_H2_PURE", "") not in ("", "0"):
    from harmonic_h2 import _pykernels as _impl
    BACKEND = "python"
else:
    try:
        from harmonic_h2 import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        from harmonic_h2 import _pykernels as _impl
        BACKEND = "python"


def _c(x):
    return np.ascontiguousarray(x, dtype=np.complex128)


def horner(c, z):
    z = np.asarray(z, dtype=np.complex128)
    return _impl.horner(_c(c), _c(z.ravel())).reshape(z.shape)


def mul_trunc(p, q, n):
    return _impl.mul_trunc(_c(p), _c(q), int(n))


def compose(p, phi, n):
    return _impl.compose(_c(p), _c(phi), int(n))


def power_matrix(phi, n):
    return _impl.power_matrix(_c(phi), int(n))


def poisson_apply(values, r, t):
    t = np.ascontiguousarray(np.atleast_1d(t), dtype=np.float64)
    return _impl.poisson_apply(_c(values), float(r), t)


def herglotz_apply(values, z):
    values = _c(values)
    m = values.shape[0]
    nodes = np.exp(2j * np.pi * np.arange(m) / m)
    z = _c(np.atleast_1d(z))
    return _impl.herglotz_apply(values, z, _c(nodes))
