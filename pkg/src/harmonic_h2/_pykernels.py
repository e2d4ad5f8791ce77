"""Numpy reference implementations of the inner loops.

Used when the compiled extension is unavailable or when
``HARMONIC_H2_PURE=1`` is set. Signatures match ``_ckernels``.
"""
import numpy as np


def horner(c, z):
    z = np.asarray(z, dtype=np.complex128)
    acc = np.zeros_like(z)
    for cj in c[::-1]:
        acc = acc * z + cj
    return acc


def mul_trunc(p, q, n):
    out = np.zeros(n + 1, dtype=np.complex128)
    full = np.convolve(p[: n + 1], q[: n + 1])[: n + 1]
    out[: full.size] = full
    return out


def compose(p, phi, n):
    acc = np.zeros(n + 1, dtype=np.complex128)
    for pj in p[::-1]:
        acc = mul_trunc(acc, phi, n)
        acc[0] += pj
    return acc


def power_matrix(phi, n):
    A = np.zeros((n + 1, n + 1), dtype=np.complex128)
    col = np.zeros(n + 1, dtype=np.complex128)
    col[0] = 1.0
    A[:, 0] = col
    for k in range(1, n + 1):
        col = mul_trunc(col, phi, n)
        A[:, k] = col
    return A


def poisson_apply(v, r, t):
    m = v.shape[0]
    theta = 2.0 * np.pi * np.arange(m) / m
    kern = (1.0 - r * r) / (1.0 - 2.0 * r * np.cos(theta[None, :] - t[:, None]) + r * r)
    return (kern * v[None, :]).sum(axis=1) / m


def herglotz_apply(v, z, nodes):
    m = v.shape[0]
    kern = (nodes[None, :] + z[:, None]) / (nodes[None, :] - z[:, None])
    return (kern * v[None, :]).sum(axis=1) / m
