"""Command-line front end.

Usage:
    harmonic-h2 eval --series f.json --z 0.5 0.1+0.2j
    harmonic-h2 norm --series f.json [--method coeff|quadrature|exact] [--r 0.99]
    harmonic-h2 compose --symbol moebius:0.5 --series f.json
    harmonic-h2 kernel --alpha 0.3 [--z ...]          (closed form; else series JSON)
    harmonic-h2 poisson --h h.json [--g g.json] --target 0.5,0.0 --target 0.9,1.2
    harmonic-h2 opnorm --symbol rotation:0 --degree 16
    harmonic-h2 audit --symbol affine:0.5,0.5 --probe z
    harmonic-h2 recover --symbol monomial:1,2 | --scale 2
    harmonic-h2 verify-all [--format json] [--out report.txt]
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys

import numpy as np

from harmonic_h2 import __version__
from harmonic_h2 import verify
from harmonic_h2.composition import apply
from harmonic_h2.integral_means import integral_mean_exact, integral_mean_quadrature, min_grid
from harmonic_h2.kernels import kernel_eval, kernel_series
from harmonic_h2.operator import (audit_claims, closed_form_bounds, composition_matrix,
                                  operator_norm_estimate, recover_symbol)
from harmonic_h2.poisson import BoundaryGrid, poisson_extend
from harmonic_h2.series import HarmonicSeries, evaluate, norm
from harmonic_h2.symbols import parse_symbol

CLI_MAX_RADIUS = 0.99


class CLIError(Exception):
    pass


def fmt(x) -> str:
    return format(float(x), ".17g")


def _to_jsonable(obj):
    if isinstance(obj, dict):
        return {k: _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        obj = obj.item()
    if isinstance(obj, complex):
        return [_to_jsonable(obj.real), _to_jsonable(obj.imag)]
    if isinstance(obj, float):
        return _Raw(fmt(obj)) if math.isfinite(obj) else None
    return obj


class _Raw(str):
    pass


def dumps(obj) -> str:
    """JSON with floats written as 17 significant digits."""
    def enc(o):
        if isinstance(o, _Raw):
            return str(o)
        if isinstance(o, dict):
            return "{" + ", ".join(f"{json.dumps(k)}: {enc(v)}" for k, v in o.items()) + "}"
        if isinstance(o, list):
            return "[" + ", ".join(enc(v) for v in o) + "]"
        return json.dumps(o)
    return enc(_to_jsonable(obj))


def _load_text(arg: str) -> str:
    if os.path.exists(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def load_series(arg: str) -> HarmonicSeries:
    text = _load_text(arg).strip()
    if text.startswith("{"):
        return HarmonicSeries.from_json(text)
    return parse_probe(text)


_TERM = re.compile(r"^(?:(?P<c>[^*]+)\*)?(?P<var>zbar|z)?(?:\^(?P<k>\d+))?$")


def parse_probe(text: str) -> HarmonicSeries:
    """Parse shorthand like ``1+z``, ``z+zbar``, ``0.5j*z^2+zbar^3``."""
    text = text.strip()
    if text.startswith("{") or os.path.exists(text):
        return load_series(text)
    a, b = {}, {}
    for term in text.replace(" ", "").split("+"):
        try:
            c = complex(term)
        except ValueError:
            pass
        else:
            a[0] = a.get(0, 0) + c
            continue
        m = _TERM.match(term)
        if m is None or m.group("var") is None:
            raise CLIError(f"cannot parse probe term {term!r}")
        var, k = m.group("var"), m.group("k")
        c = complex(m.group("c")) if m.group("c") else 1.0
        n = int(k) if k else 1
        slot = a if var == "z" else b
        if var == "zbar":
            c = np.conj(c)  # c * conj(z^n) = conj(conj(c) z^n)
        slot[n] = slot.get(n, 0) + c
    deg = max(list(a) + list(b) + [0])
    av = np.zeros(deg + 1, dtype=complex)
    bv = np.zeros(deg + 1, dtype=complex)
    for n, c in a.items():
        av[n] = c
    for n, c in b.items():
        bv[n] = c
    return HarmonicSeries(av, bv)


def _symbol(args, check=True):
    return parse_symbol(_load_text(args.symbol), degree=None, check=check)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _records(args, header, rows):
    if args.format == "json":
        return dumps([dict(zip(header, r)) for r in rows]) + "\n"
    sep = "," if args.format == "csv" else " "
    lines = [sep.join(header)] if args.format == "csv" else []
    for r in rows:
        lines.append(sep.join(fmt(v) if isinstance(v, float) else str(v) for v in r))
    return "\n".join(lines) + "\n"


def cmd_eval(args):
    f = load_series(args.series)
    rows = []
    for zs in args.z:
        z = complex(zs)
        v = evaluate(f, z)
        rows.append((z.real, z.imag, v.real, v.imag))
    return _records(args, ["z_re", "z_im", "re", "im"], rows)


def cmd_norm(args):
    f = load_series(args.series)
    methods = [args.method] if args.method else ["coeff", "quadrature", "exact"]
    out = {}
    for m in methods:
        if m == "coeff":
            out[m] = norm(f)
        elif m == "quadrature":
            if args.r > CLI_MAX_RADIUS:
                raise CLIError(f"quadrature radius capped at {CLI_MAX_RADIUS}")
            M = max(args.grid, min_grid(f))
            out[m] = math.sqrt(integral_mean_quadrature(f, args.r, M))
        else:
            out[m] = math.sqrt(integral_mean_exact(f, args.r))
    if args.format == "json":
        return dumps(out) + "\n"
    if len(out) == 1:
        return fmt(next(iter(out.values()))) + "\n"
    return "".join(f"{k} {fmt(v)}\n" for k, v in out.items())


def cmd_compose(args):
    s = _symbol(args)
    f = load_series(args.series)
    g = apply(s, f, args.out_degree)
    return dumps(g.to_dict()) + "\n"


def cmd_kernel(args):
    if args.z:
        rows = []
        for zs in args.z:
            z = complex(zs)
            v = kernel_eval(complex(args.alpha), z)
            rows.append((z.real, z.imag, v.real, v.imag))
        return _records(args, ["z_re", "z_im", "re", "im"], rows)
    return dumps(kernel_series(complex(args.alpha), args.degree).to_dict()) + "\n"


def cmd_poisson(args):
    h = BoundaryGrid.from_json(_load_text(args.h))
    g = BoundaryGrid.from_json(_load_text(args.g)) if args.g else None
    rows = []
    for tgt in args.target:
        r, t = (float(x) for x in tgt.split(","))
        if r > CLI_MAX_RADIUS:
            raise CLIError(f"radius {r} exceeds the CLI cap {CLI_MAX_RADIUS}")
        v = poisson_extend(h, g, r, t)
        rows.append((r, t, v.real, v.imag))
    fmt_args = argparse.Namespace(**{**vars(args), "format": args.format if args.format != "text" else "csv"})
    return _records(fmt_args, ["r", "t", "re", "im"], rows)


def cmd_opnorm(args):
    s = _symbol(args)
    lower, tight, loose = closed_form_bounds(abs(s.phi0))
    sigma = operator_norm_estimate(composition_matrix(s, args.degree))
    out = {"sigma_max": sigma, "lower": lower, "upper_tight": tight,
           "upper_loose": loose, "N": args.degree}
    if args.format == "json":
        return dumps(out) + "\n"
    return (f"sigma_max {fmt(sigma)}\n"
            f"bounds [{fmt(lower)}, {fmt(loose)}]\n"
            f"upper_tight {fmt(tight)}\n")


def cmd_audit(args):
    s = _symbol(args, check=False)
    probes = [parse_probe(p) for p in (args.probe or ["z"])]
    rep = audit_claims(s, probes, args.degree)
    if args.format == "json":
        return dumps(rep.to_dict()) + "\n"
    lines = [f"symbol {s.family} {dumps(rep.symbol['params'])}"]
    lines += [f"ratio {fmt(q)}" for q in rep.ratios]
    for key in ("sigma_max", "lower", "upper_tight", "upper_loose"):
        v = getattr(rep, key)
        if v is not None:
            lines.append(f"{key} {fmt(v)}")
    lines.append("flags " + " ".join(rep.flags))
    for row in rep.blowup:
        lines.append(f"blowup t={fmt(row['t'])} norm_CK={fmt(row['norm_CK'])} ratio={fmt(row['ratio'])}")
    return "\n".join(lines) + "\n"


def _parse_matrix(data):
    return np.array([[complex(*v) if isinstance(v, list) else complex(v) for v in row]
                     for row in data], dtype=np.complex128)


def cmd_recover(args):
    if args.operator:
        data = json.loads(_load_text(args.operator))
        Ta, Tb = _parse_matrix(data["Ta"]), _parse_matrix(data["Tb"])
    elif args.symbol:
        A = composition_matrix(_symbol(args), args.degree).A
        Ta = Tb = A
    else:
        Ta = Tb = complex(args.scale) * np.eye(args.degree + 1)
    grid = verify.recovery_grid()
    res = recover_symbol(Ta, Tb, grid, tol=args.tol if args.tol is not None else 1e-6)
    if args.format == "json":
        return dumps({"phi_samples": [complex(p) for p in res.phi_samples],
                      "grid": [complex(a) for a in grid],
                      "residual": res.residual, "is_composition": res.is_composition}) + "\n"
    lines = [f"alpha {fmt(a.real)} {fmt(a.imag)} phi {fmt(p.real)} {fmt(p.imag)}"
             for a, p in zip(grid, res.phi_samples)]
    lines.append(f"residual {fmt(res.residual)}")
    lines.append(f"is_composition {str(res.is_composition).lower()}")
    return "\n".join(lines) + "\n"


def cmd_verify_all(args):
    rows = verify.run_all()
    if args.format == "json":
        text = dumps([r.to_dict() for r in rows]) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["claim", "test", "status", "detail"])
        w.writerows([r.claim, r.test, r.status, r.detail] for r in rows)
        text = buf.getvalue()
    else:
        text = verify.render_text(rows)
    failed = any(r.status == verify.FAILED for r in rows)
    return text, (1 if failed else 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree", type=int, default=64, help="truncation degree N")
    common.add_argument("--grid", type=int, default=512, help="boundary/quadrature grid size M")
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")

    p = argparse.ArgumentParser(prog="harmonic-h2", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("eval", parents=[common])
    q.add_argument("--series", required=True)
    q.add_argument("--z", nargs="+", required=True)
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("norm", parents=[common])
    q.add_argument("--series", required=True)
    q.add_argument("--method", choices=["coeff", "quadrature", "exact"])
    q.add_argument("--r", type=float, default=CLI_MAX_RADIUS)
    q.set_defaults(func=cmd_norm)

    q = sub.add_parser("compose", parents=[common])
    q.add_argument("--symbol", required=True)
    q.add_argument("--series", required=True)
    q.add_argument("--out-degree", type=int, default=None)
    q.set_defaults(func=cmd_compose)

    q = sub.add_parser("kernel", parents=[common])
    q.add_argument("--alpha", required=True)
    q.add_argument("--z", nargs="+")
    q.set_defaults(func=cmd_kernel)

    q = sub.add_parser("poisson", parents=[common])
    q.add_argument("--h", required=True, help="boundary grid JSON of h")
    q.add_argument("--g", default=None, help="boundary grid JSON of g")
    q.add_argument("--target", action="append", required=True, help="r,t pair")
    q.set_defaults(func=cmd_poisson)

    q = sub.add_parser("opnorm", parents=[common])
    q.add_argument("--symbol", required=True)
    q.set_defaults(func=cmd_opnorm)

    q = sub.add_parser("audit", parents=[common])
    q.add_argument("--symbol", required=True)
    q.add_argument("--probe", action="append")
    q.set_defaults(func=cmd_audit)

    q = sub.add_parser("recover", parents=[common])
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--symbol")
    g.add_argument("--operator", help='JSON {"Ta": [[[re,im],...],...], "Tb": ...}')
    g.add_argument("--scale", help="test c * identity")
    q.set_defaults(func=cmd_recover)

    q = sub.add_parser("verify-all", parents=[common])
    q.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except (CLIError, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc),
                                "command": args.command}) + "\n")
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    _emit(args, result)
    return code


if __name__ == "__main__":
    sys.exit(main())
