"""``nablaab`` command line.

Exit status: 0 on success, 1 when a verification fails or a series does not
converge, 2 on invalid input. Errors are printed to stderr as a JSON object
``{"error": <kind>, "message": <text>}``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from nablaab.ab_ops import (
    NORMALIZATIONS,
    ABConfig,
    ab_sum_left,
    ab_sum_right,
    abc_left,
    abc_right,
    abr_left,
    abr_right,
)
from nablaab.errors import ConvergenceError, NablaABError
from nablaab.iterated_ab import IterOrder, iterated_left, iterated_right
from nablaab.laplace import (
    Envelope,
    closed_monomial,
    monomial_envelope,
    numeric_transform,
    rule_checks,
)
from nablaab.mittag_leffler import MLParams, Truncation, ml_table_full
from nablaab.nabla_core import Signal, left_frac_sum, read_csv, right_frac_sum, write_csv
from nablaab.solver import SeriesRHS, residual, solution_point, solve_series
from nablaab.special_fn import rising_function
from nablaab.verify import failures, run_suite, suite_names

TOL_ENV = "NABLAAB_TOL"
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return 1e-12
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not tol > 0:
        raise InputError(f"{TOL_ENV} must be positive")
    return tol


def _json_default(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _trunc(args) -> Truncation:
    tol = args.tol if args.tol is not None else default_tol()
    return Truncation(tol=tol, k_max=args.k_max)


# ------------------------------------------------------------------ apply


def _apply(args) -> int:
    f = read_csv(sys.stdin if args.input == "-" else args.input)
    trunc = _trunc(args)
    cfg = ABConfig.named(args.alpha, args.b_norm)
    left = args.side == "left"
    meta = {"op": args.op, "side": args.side, "alpha": args.alpha, "b_norm": args.b_norm,
            "tol": trunc.tol, "k_used": 1, "tail_bound": 0.0}

    if args.op == "frac-sum":
        if args.mu is None:
            raise InputError("--op frac-sum needs --mu (the order of the sum)")
        out = (left_frac_sum if left else right_frac_sum)(f, args.mu)
        meta["mu"] = args.mu
    elif args.op == "ab-sum":
        out = (ab_sum_left if left else ab_sum_right)(f, cfg)
    elif args.op in ("abc", "abr"):
        op = {("abc", True): abc_left, ("abc", False): abc_right,
              ("abr", True): abr_left, ("abr", False): abr_right}[args.op, left]
        out = op(f, cfg, trunc=trunc)
        if cfg.alpha > 0:
            tab = ml_table_full(MLParams(cfg.alpha, cfg.lam), len(f), trunc)
            meta["k_used"] = int(np.max(tab.terms))
            meta["tail_bound"] = float(np.max(tab.tail_bounds))
    else:
        if args.mu is None:
            raise InputError("--op iterated needs --mu")
        res = (iterated_left if left else iterated_right)(f, IterOrder(args.alpha, args.mu), cfg, trunc)
        out = res.values
        meta.update(mu=args.mu, k_used=res.k_used, tail_bound=res.tail_bound)

    _emit(write_csv(out), args.out)
    meta_text = dumps(meta)
    if args.meta:
        Path(args.meta).write_text(meta_text)
    elif args.out:
        Path(args.out + ".json").write_text(meta_text)
    else:
        sys.stderr.write(meta_text)
    return EXIT_OK


# --------------------------------------------------------------------- ml


def _ml(args) -> int:
    trunc = _trunc(args)
    p = MLParams(args.alpha, args.lam, args.beta, args.rho)
    v_max = args.v if args.v_max is None else args.v_max
    if v_max is None:
        raise InputError("give --v or --v-max")
    tab = ml_table_full(p, v_max, trunc)
    if args.v_max is None:
        v = args.v
        _emit(dumps({"alpha": p.alpha, "lambda": p.lam, "beta": p.beta, "rho": p.rho, "v": v,
                     "value": float(tab.values[v]), "terms": int(tab.terms[v]),
                     "tail_bound": float(tab.tail_bounds[v]), "extended": bool(tab.extended[v])}),
              args.out)
    else:
        _emit(write_csv(Signal(0, tab.values)), args.out)
    return EXIT_OK


# ----------------------------------------------------------- laplace-check


def _signal_for(kind: str, mu: float):
    if kind == "one":
        return (lambda t: 1.0), Envelope(), 1.0
    if kind == "monomial":
        return (lambda t: rising_function(t, mu - 1.0)), monomial_envelope(mu), mu
    raise InputError(f"unknown signal {kind!r}")


def _laplace_check(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    f, env, mu = _signal_for(args.signal, args.mu)
    rows = []
    for z in args.z:
        tp = numeric_transform(f, 0, z, tol, env)
        closed = closed_monomial(mu, z)
        gap = abs(tp.value - closed)
        rows.append({"rule": "K (t-a)^(mu-1) = Gamma(mu)/z^mu", "z": z, "lhs": tp.value, "rhs": closed,
                     "gap": gap, "tol": tp.tail_bound, "pass": gap <= tp.tail_bound})
        for r in rule_checks(f, z, nu=args.nu, tol=tol, envelope=env):
            rows.append({"rule": r["rule"], "z": r["z"], "lhs": float(r["lhs"]), "rhs": float(r["rhs"]),
                         "gap": float(r["gap"]), "tol": float(r["bound"]), "pass": bool(r["pass"])})
    _emit(dumps(rows), args.out)
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_FAIL


# ------------------------------------------------------------------ solve


_SOLVE_KEYS = {"alpha": float, "mu": float, "A": float, "b_coeffs": list, "n_terms": int, "t_max": int}


def _solve_config(args) -> dict:
    cfg = {}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"config is not valid JSON: {exc}") from None
        unknown = set(cfg) - set(_SOLVE_KEYS) - {"b_norm"}
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
    for key in _SOLVE_KEYS:
        flag = getattr(args, key)
        if flag is not None:
            cfg[key] = flag
    cfg.setdefault("n_terms", 25)
    cfg.setdefault("t_max", 6)
    cfg.setdefault("b_norm", args.b_norm)
    missing = [k for k in ("alpha", "mu", "A", "b_coeffs") if k not in cfg]
    if missing:
        raise InputError(f"missing solve parameters: {missing}")
    return cfg


def _solve(args) -> int:
    c = _solve_config(args)
    cfg = ABConfig.named(c["alpha"], c["b_norm"])
    rhs = SeriesRHS(c["b_coeffs"], c["alpha"])
    sol = solve_series(c["alpha"], c["mu"], c["A"], rhs, cfg, c["n_terms"])
    tol = args.tol if args.tol is not None else default_tol()
    points = [solution_point(sol, t, tol) for t in range(c["t_max"] + 1)]
    res = residual(sol, rhs, cfg=cfg, t_max=c["t_max"], trunc=_trunc(args))
    report = {"identity": "nabla^(-a,-mu) x = -A x + b", "params": c, "max_gap": res,
              "tol": args.residual_tol, "pass": res <= args.residual_tol}
    if args.format == "json":
        _emit(dumps({
            "coefficients": sol.coefficients.tolist(),
            "grid": [{"t": t, "value": p.value, "last_term": p.last_term, "trusted": p.trusted}
                     for t, p in enumerate(points)],
            "residual": report,
        }), args.out)
    else:
        _emit(write_csv(Signal(0, np.array([p.value for p in points]))), args.out)
        if args.coef_out:
            lines = ["s,c"] + [f"{s},{float(v)!r}" for s, v in enumerate(sol.coefficients)]
            Path(args.coef_out).write_text("\n".join(lines) + "\n")
        sys.stderr.write(dumps(report))
    return EXIT_OK if report["pass"] else EXIT_FAIL


# ----------------------------------------------------------------- verify


def _verify(args) -> int:
    reports = run_suite(args.suite, args.alpha)
    _emit(dumps(reports), args.out)
    return EXIT_FAIL if failures(reports) else EXIT_OK


# ----------------------------------------------------------------- parser


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=None, help=f"series tolerance (default ${TOL_ENV} or 1e-12)")
    p.add_argument("--k-max", type=int, default=10_000)
    p.add_argument("--b-norm", choices=sorted(NORMALIZATIONS), default="one")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nablaab", description="Discrete nabla fractional operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", help="apply an operator to a t,value CSV signal")
    p.add_argument("--op", required=True, choices=["frac-sum", "ab-sum", "abc", "abr", "iterated"])
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--in", dest="input", required=True, help="input CSV, or - for stdin")
    p.add_argument("--meta", default=None, help="metadata JSON path (default <out>.json, or stderr)")
    _common(p)
    p.set_defaults(run=_apply)

    p = sub.add_parser("ml", help="evaluate a discrete Mittag-Leffler function")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--lam", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--rho", type=float, default=1.0)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--v", type=int)
    g.add_argument("--v-max", type=int, help="tabulate v = 0..v_max as CSV")
    _common(p)
    p.set_defaults(run=_ml)

    p = sub.add_parser("laplace-check", help="transform rules and closed forms")
    p.add_argument("--signal", choices=["one", "monomial"], default="one")
    p.add_argument("--mu", type=float, default=2.0, help="monomial (t-a)^(mu-1)")
    p.add_argument("--nu", type=float, default=0.5, help="order for the sum rule")
    p.add_argument("--z", type=float, action="append", default=None)
    _common(p)
    p.set_defaults(run=_laplace_check)

    p = sub.add_parser("solve", help="series solution of the iterated-AB equation")
    p.add_argument("--config", default=None, help="JSON with alpha, mu, A, b_coeffs, n_terms, t_max")
    p.add_argument("--alpha", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("-A", "--A", dest="A", type=float)
    p.add_argument("--b", dest="b_coeffs", type=lambda s: [float(x) for x in s.split(",")])
    p.add_argument("--n-terms", dest="n_terms", type=int)
    p.add_argument("--t-max", dest="t_max", type=int)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--coef-out", default=None)
    p.add_argument("--residual-tol", type=float, default=1e-6)
    _common(p)
    p.set_defaults(run=_solve)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("--suite", choices=suite_names(), default="all")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(run=_verify)
    return parser


def _error(kind: str, exc: BaseException, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "z", "unset") is None:
        args.z = [0.5, 0.8, 1.2]
    try:
        return args.run(args)
    except ConvergenceError as exc:
        return _error("convergence", exc, EXIT_FAIL)
    except (NablaABError, InputError, ValueError, ZeroDivisionError) as exc:
        return _error(type(exc).__name__, exc, EXIT_INPUT)
    except OSError as exc:
        return _error("io", exc, EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
