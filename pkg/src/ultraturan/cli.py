"""Command-line front end: ``ultraturan <subcommand> [options]``.

Exit codes: 0 success / all checks pass, 1 a check or certificate failed,
2 usage, configuration or parameter-domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import exact
from .gegenbauer import ParameterDomainError, UltraParams, eval_poly, ode_residuals
from .kernels import BACKEND
from .suite import TOLERANCES, ConfigError, SuiteConfig, run_suite
from .turan import BoundFamily, bound_arrays, bound_report, turan_arrays, turan_eval
from .zeros import ConsistencyError, largest_zero_bound, proof_threshold, zeros

SCAN_HEADER = ["x", "delta", "phi", "dphi", "d2phi", "lower", "upper"]


def _num(v):
    """Shortest repr that round-trips binary64 exactly."""
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _jsonable(v):
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, BoundFamily):
        return v.value
    return v


def _emit(rows: list, fmt: str, out, header: list | None = None):
    """Write a list of dicts as text (key=value), json or csv."""
    if not rows:
        return
    header = header or list(rows[0])
    if fmt == "json":
        payload = [{k: _jsonable(r[k]) for k in header} for r in rows]
        json.dump(payload[0] if len(payload) == 1 else payload, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_num(r[k]) for k in header])
    else:
        for i, r in enumerate(rows):
            if i:
                out.write("\n")
            for k in header:
                out.write(f"{k}={_num(_jsonable(r[k]))}\n")


def _params(args) -> UltraParams:
    if args.n is None:
        raise ConfigError("--n is required")
    return UltraParams(args.lam, args.n)


def _need_x(args) -> float:
    if args.x is None:
        raise ConfigError("--x is required")
    return args.x


def cmd_eval(args, out):
    p = _params(args)
    e = eval_poly(p, _need_x(args))
    r2, r3 = ode_residuals(p, e)
    row = {**asdict(e), "r2": r2, "r3": r3}
    _emit([row], args.format, out)
    return 0


def cmd_turan(args, out):
    p = _params(args)
    _emit([asdict(turan_eval(p, _need_x(args)))], args.format, out)
    return 0


def cmd_zeros(args, out):
    p = _params(args)
    zs = zeros(p)
    if args.format == "csv":
        rows = [{"k": k + 1, "zero": z, "residual": r} for k, (z, r) in enumerate(zip(zs.zeros, zs.residuals))]
        _emit(rows, "csv", out)
        return 0
    info = {"lambda": p.lam, "n": p.n, "zeros": list(zs.zeros), "residuals": list(zs.residuals), "largest_squared": zs.largest**2}
    if p.n >= 2:
        info["largest_zero_bound"] = largest_zero_bound(p)
        info["proof_threshold"] = proof_threshold(p)
    if args.format == "json":
        json.dump(info, out, indent=2)
        out.write("\n")
    else:
        for k, (z, r) in enumerate(zip(zs.zeros, zs.residuals), 1):
            out.write(f"x_{k}={_num(z)} residual={_num(r)}\n")
        for key in ("largest_squared", "largest_zero_bound", "proof_threshold"):
            if key in info:
                out.write(f"{key}={_num(info[key])}\n")
    return 0


def cmd_bounds(args, out):
    p = _params(args)
    rep = bound_report(p, _need_x(args), args.family or "corollary12")
    _emit([asdict(rep)], args.format, out)
    return 0


def cmd_scan(args, out):
    if args.vary == "n":
        if args.n is None:
            raise ConfigError("--n (largest degree) is required for --vary n")
        x = 0.5 if args.x is None else args.x
        rows = []
        for n in range(1, args.n + 1):
            t = turan_arrays(UltraParams(args.lam, n), [x])
            rows.append({"n": n, "delta": float(t["delta"][0])})
        _emit(rows, args.format if args.format != "text" else "csv", out, ["n", "delta"])
        return 0
    p = _params(args)
    grid = args.grid or 201
    if grid < 3:
        raise ConfigError("--grid must be >= 3")
    xs = np.linspace(args.xmin, args.xmax, grid)
    t = turan_arrays(p, xs)
    family = args.family or "corollary12"
    lower = upper = None
    if not (p.lam == 0 and family in ("basic15", "corollary12")):
        _, lower, upper, _ = bound_arrays(p, xs, family)
    rows = []
    for i, x in enumerate(xs):
        rows.append({
            "x": float(x),
            "delta": float(t["delta"][i]),
            "phi": float(t["phi"][i]),
            "dphi": float(t["dphi"][i]),
            "d2phi": float(t["d2phi"][i]),
            "lower": None if lower is None else float(lower[i]),
            "upper": None if upper is None else float(upper[i]),
        })
    _emit(rows, args.format if args.format != "text" else "csv", out, SCAN_HEADER)
    return 0


def cmd_certify(args, out):
    if args.check:
        cert = exact.loads(Path(args.check).read_text())
        res = exact.check_certificate(cert)
        out.write(cert.summary() + "\n")
        out.write(f"checker: {'ACCEPTED' if res.ok else 'REJECTED'} ({res.leaves_checked} leaves)\n")
        for prob in res.problems:
            out.write(f"  problem: {prob}\n")
        return 0 if res.ok and cert.proved else 1
    depth = 30 if args.depth is None else args.depth
    if depth < 1:
        raise ConfigError("--depth must be >= 1")
    certs = []
    if args.target in ("ratio", "all"):
        certs.append(exact.certify_ratio_inequality(max_depth=depth))
    if args.target in ("comparison", "all"):
        certs.append(exact.certify_bound_comparison(max_depth=depth, lambda_cap=args.lambda_cap))
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    status = 0
    for cert in certs:
        path = outdir / f"{cert.target}.cert"
        path.write_text(exact.dumps(cert))
        res = exact.check_certificate(cert)
        out.write(cert.summary() + "\n")
        out.write(f"  checker: {'ACCEPTED' if res.ok else 'REJECTED'}; written to {path}\n")
        if not (cert.proved and res.ok):
            status = 1
    return status


def _parse_degrees(spec: str):
    if ":" in spec:
        a, b = spec.split(":", 1)
        return int(a), int(b)
    return 1, int(spec)


def cmd_verify(args, out):
    tol = {}
    for item in args.tol or []:
        key, _, val = item.partition("=")
        if key not in TOLERANCES or not val:
            raise ConfigError(f"bad --tol {item!r}; keys: {', '.join(sorted(TOLERANCES))}")
        tol[key] = float(val)
    kwargs = {}
    if args.lambdas:
        kwargs["lambdas"] = tuple(args.lambdas)
    if args.degrees:
        kwargs["n_min"], kwargs["n_max"] = _parse_degrees(args.degrees)
    if args.grid:
        kwargs["grid"] = args.grid
    cfg = SuiteConfig(
        tolerances=tol,
        output_format=args.format,
        literal=args.literal,
        certificates=not args.no_certificates,
        **kwargs,
    )
    results = run_suite(cfg)
    rows = [
        {"module": r.module, "check": r.name, "passed": r.passed, "worst": r.worst, "tolerance": r.tolerance, "where": r.detail}
        for r in results
    ]
    if args.format == "text":
        for r in results:
            out.write(r.line() + "\n")
        failed = sum(not r.passed for r in results)
        out.write(f"{len(results) - failed}/{len(results)} checks passed (kernel: {BACKEND})\n")
    elif args.format == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    else:
        _emit(rows, "csv", out)
    return 0 if all(r.passed for r in results) else 1


def _lambda_list(s: str):
    try:
        return [float(v) for v in s.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad lambda list {s!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ultraturan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(sp, need_x=True):
        sp.add_argument("--lambda", dest="lam", type=float, required=True, help="ultraspherical parameter (> -1/2)")
        sp.add_argument("--n", type=int, help="degree")
        if need_x:
            sp.add_argument("--x", type=float, help="evaluation point")
        sp.add_argument("--format", choices=["text", "json", "csv"], default="text")

    common(sub.add_parser("eval", help="p_{n-1}, p_n, p_{n+1}, p_n', p_n'', p_n''' and ODE residuals"))
    common(sub.add_parser("turan", help="delta, phi, phi', phi'', psi, psi'"))
    common(sub.add_parser("zeros", help="zeros of p_n with the largest-zero bound and threshold"), need_x=False)
    b = sub.add_parser("bounds", help="one bound family at one point")
    common(b)
    b.add_argument("--family", choices=[f.value for f in BoundFamily])

    s = sub.add_parser("scan", help="CSV scan over x (or over n at fixed x)")
    common(s)
    s.add_argument("--vary", choices=["x", "n"], default="x")
    s.add_argument("--grid", type=int, help="number of x points (default 201)")
    s.add_argument("--xmin", type=float, default=-1.0)
    s.add_argument("--xmax", type=float, default=1.0)
    s.add_argument("--family", choices=[f.value for f in BoundFamily], help="bound family for lower/upper columns")
    s.add_argument("--out", help="write to this file instead of stdout")

    c = sub.add_parser("certify", help="exact certificates for the two polynomial inequalities")
    c.add_argument("--target", choices=["ratio", "comparison", "all"], default="all")
    c.add_argument("--depth", type=int, help="subdivision limit per axis (default 30)")
    c.add_argument("--lambda-cap", type=float, help="certify only lambda <= cap (default: unbounded)")
    c.add_argument("--out", help="directory for .cert files (default: current directory)")
    c.add_argument("--check", metavar="FILE", help="re-verify a certificate file instead of producing one")
    c.add_argument("--format", choices=["text"], default="text")

    v = sub.add_parser("verify", help="run the full invariant suite")
    v.add_argument("--lambda", dest="lambdas", type=_lambda_list, help="comma-separated lambdas")
    v.add_argument("--n", dest="degrees", help="largest degree N or range A:B (default 1:60)")
    v.add_argument("--grid", type=int, help="grid size (default 1001)")
    v.add_argument("--tol", action="append", metavar="KEY=VALUE", help="override one tolerance")
    v.add_argument("--literal", action="store_true", help="check the statements exactly as printed (three are known false)")
    v.add_argument("--no-certificates", action="store_true", help="skip the exact-certificate checks")
    v.add_argument("--format", choices=["text", "json", "csv"], default="text")
    return parser


COMMANDS = {
    "eval": cmd_eval,
    "turan": cmd_turan,
    "zeros": cmd_zeros,
    "bounds": cmd_bounds,
    "scan": cmd_scan,
    "certify": cmd_certify,
    "verify": cmd_verify,
}


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return int(exc.code or 0)
    try:
        if getattr(args, "out", None) and args.command == "scan":
            buf = io.StringIO()
            code = COMMANDS[args.command](args, buf)
            Path(args.out).write_text(buf.getvalue())
            return code
        return COMMANDS[args.command](args, stdout)
    except (ParameterDomainError, ConfigError, ConsistencyError, exact.textformat.FormatError, OSError) as exc:
        print(f"ultraturan {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
