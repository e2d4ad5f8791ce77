# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Mirrors :mod:`harmonic_h2._pykernels`.

Complex arrays are handled as interleaved float64 (re, im) views with
explicit real arithmetic; this avoids the C99 complex multiply libcall and
keeps the operation order fixed.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, M_PI

cnp.import_array()


cdef inline object _dv(x):
    return np.ascontiguousarray(x, dtype=np.complex128).view(np.float64)


cdef inline Py_ssize_t _trimmed(const double[::1] q) noexcept nogil:
    # number of complex entries up to the last nonzero one
    cdef Py_ssize_t n = q.shape[0] // 2
    while n > 1 and q[2 * n - 2] == 0.0 and q[2 * n - 1] == 0.0:
        n -= 1
    return n


def horner(c, z):
    cdef const double[::1] cc = _dv(c)
    cdef const double[::1] zz = _dv(z)
    cdef Py_ssize_t n = cc.shape[0] // 2, m = zz.shape[0] // 2, i, j
    out = np.empty(m, dtype=np.complex128)
    cdef double[::1] o = out.view(np.float64)
    cdef double zr, zi, ar, ai
    with nogil:
        # coefficient-outer order: same per-point arithmetic, no serial chain
        for i in range(m):
            o[2 * i] = 0.0
            o[2 * i + 1] = 0.0
        for j in range(n - 1, -1, -1):
            for i in range(m):
                zr = zz[2 * i]
                zi = zz[2 * i + 1]
                ar = o[2 * i]
                ai = o[2 * i + 1]
                o[2 * i] = ar * zr - ai * zi + cc[2 * j]
                o[2 * i + 1] = ar * zi + ai * zr + cc[2 * j + 1]
    return out


cdef void _mul_into(const double[::1] p, const double[::1] q, double[::1] out, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, k, lp = p.shape[0] // 2, lq = _trimmed(q), jmax
    cdef double pr, pi, qr, qi
    for i in range(2 * (n + 1)):
        out[i] = 0.0
    for i in range(min(lp, n + 1)):
        pr = p[2 * i]
        pi = p[2 * i + 1]
        if pr == 0.0 and pi == 0.0:
            continue
        jmax = min(lq, n + 1 - i)
        for j in range(jmax):
            qr = q[2 * j]
            qi = q[2 * j + 1]
            k = 2 * (i + j)
            out[k] = out[k] + (pr * qr - pi * qi)
            out[k + 1] = out[k + 1] + (pr * qi + pi * qr)


def mul_trunc(p, q, Py_ssize_t n):
    out = np.zeros(n + 1, dtype=np.complex128)
    cdef const double[::1] pp = _dv(p)
    cdef const double[::1] qq = _dv(q)
    _mul_into(pp, qq, out.view(np.float64), n)
    return out


def compose(p, phi, Py_ssize_t n):
    cdef const double[::1] pp = _dv(p)
    cdef const double[::1] ph = _dv(phi)
    acc = np.zeros(n + 1, dtype=np.complex128)
    tmp = np.zeros(n + 1, dtype=np.complex128)
    cdef double[::1] r = acc.view(np.float64)
    cdef double[::1] t = tmp.view(np.float64)
    cdef Py_ssize_t j, k
    with nogil:
        for j in range(pp.shape[0] // 2 - 1, -1, -1):
            _mul_into(r, ph, t, n)
            for k in range(2 * (n + 1)):
                r[k] = t[k]
            r[0] = r[0] + pp[2 * j]
            r[1] = r[1] + pp[2 * j + 1]
    return acc


def power_matrix(phi, Py_ssize_t n):
    cdef const double[::1] ph = _dv(phi)
    A = np.zeros((n + 1, n + 1), dtype=np.complex128)
    cdef double[:, ::1] a = A.view(np.float64)
    col = np.zeros(n + 1, dtype=np.complex128)
    tmp = np.zeros(n + 1, dtype=np.complex128)
    cdef double[::1] c = col.view(np.float64)
    cdef double[::1] t = tmp.view(np.float64)
    cdef Py_ssize_t i, k
    with nogil:
        c[0] = 1.0
        a[0, 0] = 1.0
        for k in range(1, n + 1):
            _mul_into(c, ph, t, n)
            for i in range(n + 1):
                c[2 * i] = t[2 * i]
                c[2 * i + 1] = t[2 * i + 1]
                a[i, 2 * k] = t[2 * i]
                a[i, 2 * k + 1] = t[2 * i + 1]
    return A


def poisson_apply(v, double r, t):
    cdef const double[::1] vv = _dv(v)
    cdef const double[::1] tt = np.ascontiguousarray(np.atleast_1d(t), dtype=np.float64)
    cdef Py_ssize_t m = vv.shape[0] // 2, nt = tt.shape[0], i, j
    theta = 2.0 * np.pi * np.arange(m) / m
    cdef const double[::1] cs = np.cos(theta)
    cdef const double[::1] sn = np.sin(theta)
    out = np.empty(nt, dtype=np.complex128)
    cdef double[::1] o = out.view(np.float64)
    cdef double num = 1.0 - r * r, base = 1.0 + r * r, ct, st, w, accr, acci
    with nogil:
        for i in range(nt):
            # cos(theta_j - t) = cos theta_j cos t + sin theta_j sin t
            ct = 2.0 * r * cos(tt[i])
            st = 2.0 * r * sin(tt[i])
            accr = 0.0
            acci = 0.0
            for j in range(m):
                w = num / (base - (cs[j] * ct + sn[j] * st))
                accr = accr + w * vv[2 * j]
                acci = acci + w * vv[2 * j + 1]
            o[2 * i] = accr / m
            o[2 * i + 1] = acci / m
    return out


def herglotz_apply(v, z, nodes):
    cdef const double[::1] vv = _dv(v)
    cdef const double[::1] zz = _dv(z)
    cdef const double[::1] nd = _dv(nodes)
    cdef Py_ssize_t m = vv.shape[0] // 2, nz = zz.shape[0] // 2, i, j
    out = np.empty(nz, dtype=np.complex128)
    cdef double[::1] o = out.view(np.float64)
    cdef double zr, zi, nr, ni, dr, di, d2, qr, qi, accr, acci
    with nogil:
        for i in range(nz):
            zr = zz[2 * i]
            zi = zz[2 * i + 1]
            accr = 0.0
            acci = 0.0
            for j in range(m):
                # (w + z) / (w - z) = (w + z) conj(w - z) / |w - z|^2
                nr = nd[2 * j] + zr
                ni = nd[2 * j + 1] + zi
                dr = nd[2 * j] - zr
                di = nd[2 * j + 1] - zi
                d2 = dr * dr + di * di
                qr = (nr * dr + ni * di) / d2
                qi = (ni * dr - nr * di) / d2
                accr = accr + (qr * vv[2 * j] - qi * vv[2 * j + 1])
                acci = acci + (qr * vv[2 * j + 1] + qi * vv[2 * j])
            o[2 * i] = accr / m
            o[2 * i + 1] = acci / m
    return out
