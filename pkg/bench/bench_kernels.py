"""Time the compiled kernels against the numpy fallback.

    python3 bench/bench_kernels.py [--repeat 5] [--degree 256]

Each row reports the best-of-``repeat`` wall time per call for both
backends and the speedup. Results are also checked for agreement.
"""
import argparse
import timeit

import numpy as np

from harmonic_h2 import _pykernels as py

try:
    from harmonic_h2 import _ckernels as cy
except ImportError:
    cy = None


def cases(N, M):
    rng = np.random.default_rng(0)
    c = rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1)
    phi = np.zeros(N + 1, dtype=complex)
    phi[:3] = [0.2, 0.5, 0.2]
    z = 0.9 * np.exp(2j * np.pi * rng.uniform(size=M))
    v = rng.normal(size=M) + 1j * rng.normal(size=M)
    t = np.linspace(0, 2 * np.pi, 64)
    nodes = np.exp(2j * np.pi * np.arange(M) / M)
    zin = 0.8 * z[:64]
    return [
        ("horner", lambda k: k.horner(c, z)),
        ("mul_trunc", lambda k: k.mul_trunc(c, c, N)),
        ("compose", lambda k: k.compose(c, phi, N)),
        ("power_matrix", lambda k: k.power_matrix(phi, N)),
        ("poisson_apply", lambda k: k.poisson_apply(v, 0.9, t)),
        ("herglotz_apply", lambda k: k.herglotz_apply(v.real.astype(complex), zin, nodes)),
    ]


def best(fn, repeat):
    n, _ = timeit.Timer(fn).autorange()
    return min(timeit.repeat(fn, number=n, repeat=repeat)) / n


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=256)
    ap.add_argument("--grid", type=int, default=512)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if cy is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")

    print(f"degree={args.degree} grid={args.grid}")
    print(f"{'kernel':<16}{'cython (s)':>14}{'numpy (s)':>14}{'speedup':>10}  max|diff|")
    for name, call in cases(args.degree, args.grid):
        diff = float(np.max(np.abs(np.asarray(call(cy)) - np.asarray(call(py)))))
        tc = best(lambda: call(cy), args.repeat)
        tp = best(lambda: call(py), args.repeat)
        print(f"{name:<16}{tc:>14.3e}{tp:>14.3e}{tp / tc:>10.1f}  {diff:.1e}")


if __name__ == "__main__":
    main()
