"""Executable identity checks grouped into named suites.

Every check returns a report ``{identity, params, max_gap, tol, pass}``.
Random signals come from a seeded generator, so a suite is a pure function
of its arguments.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from nablaab import exact
from nablaab.ab_ops import (
    ABConfig,
    ab_sum_left,
    ab_sum_right,
    abr_left,
    abr_right,
    abr_series,
    abr_series_right,
    inverse_relations_check,
)
from nablaab.iterated_ab import (
    IterOrder,
    integration_by_parts_check,
    iterated_kernel_form,
    iterated_left,
    iterated_right,
    laplace_symbol,
    monomial_image,
    semigroup_compose,
)
from nablaab.laplace import (
    Envelope,
    closed_exp_monomial,
    closed_ml,
    closed_monomial,
    empirical_transform,
    horizon,
    monomial_envelope,
    numeric_transform,
    rule_checks,
)
from nablaab.mittag_leffler import MLParams, Truncation, ml_eval, ml_forward_identities, ml_table
from nablaab.nabla_core import Signal, left_sum_values, right_sum_values
from nablaab.solver import SeriesRHS, recursion_check, residual, solve_series, tabulate
from nablaab.special_fn import (
    exact_gen_binomial,
    exact_kernel,
    gen_binomial,
    kernel,
    rising_function,
)

__all__ = ["report", "SUITES", "run_suite", "suite_names", "failures"]

Report = dict


def report(identity: str, params: dict, max_gap: float, tol: float, ok: bool | None = None) -> Report:
    gap = float(max_gap)
    return {
        "identity": identity,
        "params": params,
        "max_gap": gap,
        "tol": float(tol),
        "pass": bool(gap <= tol) if ok is None else bool(ok),
    }


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _rel(u, v) -> float:
    u, v = np.asarray(u, dtype=np.float64), np.asarray(v, dtype=np.float64)
    return float(np.max(np.abs(u - v)) / max(float(np.max(np.abs(v))), 1e-300))


def _gap(u, v, sl=slice(None)) -> float:
    u, v = np.asarray(u, dtype=np.float64), np.asarray(v, dtype=np.float64)
    return float(np.max(np.abs(u[sl] - v[sl]), initial=0.0))


# ---------------------------------------------------------------- special_fn


def rising_recurrence(mus=(0.3, 1.7, 2.5), z_max: int = 50) -> list[Report]:
    out = []
    for mu in mus:
        rec = oper = 0.0
        for z in range(1, z_max + 1):
            lhs, rhs = rising_function(z, mu + 1), (z + mu) * rising_function(z, mu)
            rec = max(rec, abs(lhs - rhs) / abs(rhs))
            lhs = rising_function(z, mu) - rising_function(z - 1, mu)
            rhs = mu * rising_function(z, mu - 1)
            oper = max(oper, abs(lhs - rhs) / max(abs(rhs), 1e-300))
        out.append(report("z^(mu+1) = (z+mu) z^(mu)", {"mu": mu, "z_max": z_max}, rec, 1e-12))
        out.append(report("nabla z^(mu) = mu z^(mu-1)", {"mu": mu, "z_max": z_max}, oper, 1e-12))
    return out


def kernel_vs_exact(nus=("1/3", "5/4", "-7/10", "2/9"), n_max: int = 200) -> list[Report]:
    out = []
    for s in nus:
        nu = Fraction(s)
        worst = 0.0
        for n in range(1, n_max + 1):
            ref = exact_kernel(n, nu)
            if ref:
                worst = max(worst, abs(kernel(n, float(nu)) - float(ref)) / abs(float(ref)))
        out.append(report("kernel float = kernel exact", {"nu": s, "n_max": n_max}, worst, 1e-13))
    return out


def pascal(mus=(0.3, -1.7, 2.5), k_max: int = 30) -> list[Report]:
    out = []
    for mu in mus:
        worst = 0.0
        for k in range(1, k_max + 1):
            lhs = gen_binomial(mu, k)
            rhs = gen_binomial(mu - 1, k) + gen_binomial(mu - 1, k - 1)
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
        out.append(report("binom(mu,k) = binom(mu-1,k) + binom(mu-1,k-1)", {"mu": mu}, worst, 1e-13))
    return out


def vandermonde(pairs=(("1/3", "-5/2"), ("3/4", "1/4"), ("-1/2", "-3/2")), m_max: int = 12) -> list[Report]:
    out = []
    for mu, nu in pairs:
        bad = sum(1 for m in range(m_max + 1) if exact.vandermonde_gap(mu, nu, m) != 0)
        out.append(report("Vandermonde convolution (exact)", {"mu": mu, "nu": nu, "m_max": m_max}, bad, 0))
    return out


# ---------------------------------------------------------- mittag_leffler


def ml_alpha_one(lams=(-0.7, -0.3, 0.3, 0.5, 0.7), v_max: int = 30) -> list[Report]:
    out = []
    for lam in lams:
        tab = ml_table(MLParams(1.0, lam), v_max)
        ref = (1.0 - lam) ** -np.arange(v_max + 1, dtype=np.float64)
        gap = float(np.max(np.abs(tab - ref) / ref))
        out.append(report("E_1(lam, v) = (1-lam)^-v", {"lambda": lam, "v_max": v_max}, gap, 1e-10))
    return out


def ml_identities(
    cases=((0.3, -0.5, 1.0, 1.0), (0.5, 0.4, 1.5, 1.0), (0.7, -0.3, 2.0, 2.0), (1.0, 0.6, 1.0, 1.0)),
    v_max: int = 20,
    gamma: float = 0.6,
) -> list[Report]:
    out = []
    for al, lam, be, rho in cases:
        worst: dict[str, float] = {}
        for v in range(1, v_max + 1):
            for r in ml_forward_identities(MLParams(al, lam, be, rho), v, gamma=gamma):
                if r["gap"] is None:
                    continue
                rel = r["gap"] / max(1.0, abs(r["rhs"]))
                worst[r["identity"]] = max(worst.get(r["identity"], 0.0), rel)
        params = {"alpha": al, "lambda": lam, "beta": be, "rho": rho, "v_max": v_max}
        for name, gap in worst.items():
            out.append(report(name, params, gap, 1e-10))
    return out


def ml_aliases(alpha: float = 0.4, lam: float = -0.6, v_max: int = 15) -> list[Report]:
    a = ml_table(MLParams(alpha, lam), v_max)
    b = ml_table(MLParams(alpha, lam, 1.0, 1.0), v_max)
    c = ml_table(MLParams(alpha, lam, 1.3), v_max)
    d = ml_table(MLParams(alpha, lam, 1.3, 1.0), v_max)
    params = {"alpha": alpha, "lambda": lam}
    return [
        report("E_a = E_a,1 (bit-identical)", params, float(np.max(np.abs(a - b))), 0.0),
        report("E_a,b = E^1_a,b (bit-identical)", params, float(np.max(np.abs(c - d))), 0.0),
    ]


def ml_tail_bound(cases=((0.3, -0.5, 12), (0.6, 0.8, 25), (0.9, -0.9, 10))) -> list[Report]:
    """A loose evaluation differs from a tight one by at most its reported bound."""
    out = []
    for al, lam, v in cases:
        p = MLParams(al, lam)
        loose = ml_eval(p, v, Truncation(tol=1e-6))
        tight = ml_eval(p, v, Truncation(tol=1e-15))
        allowance = loose.tail_bound + 64 * np.finfo(float).eps * abs(tight.value)
        out.append(report(
            "truncation bound covers the remainder",
            {"alpha": al, "lambda": lam, "v": v, "bound": allowance},
            abs(loose.value - tight.value),
            allowance,
        ))
    return out


# ---------------------------------------------------------------- nabla_core


def frac_semigroup(orders=(0.3, 0.5, 1.2), n: int = 32, seed: int = 0) -> list[Report]:
    x = _rng(seed).uniform(-1.0, 1.0, n)
    out = []
    for side, fn in (("left", left_sum_values), ("right", right_sum_values)):
        worst = 0.0
        for a in orders:
            for m in orders:
                worst = max(worst, _rel(fn(fn(x, a), m), fn(x, a + m)))
        out.append(report(f"sum^-a sum^-m = sum^-(a+m) [{side}]",
                          {"orders": list(orders), "n": n}, worst, 1e-10))
    return out


def frac_semigroup_exact(orders=("1/4", "1/2", "3/4"), n: int = 16, seed: int = 0) -> list[Report]:
    rng = _rng(seed)
    f = [Fraction(int(p), int(q)) for p, q in zip(rng.integers(-9, 10, n), rng.integers(1, 6, n))]
    out = []
    for side, fn in (("left", exact.exact_left_sum), ("right", exact.exact_right_sum)):
        bad = 0
        for a in orders:
            for m in orders:
                a_, m_ = Fraction(a), Fraction(m)
                bad += fn(fn(f, a_), m_) != fn(f, a_ + m_)
        out.append(report(f"sum^-a sum^-m = sum^-(a+m) [{side}, exact]",
                          {"orders": list(orders), "n": n}, bad, 0))
    return out


def power_rules(alphas=(0.3, 0.5), betas=(0.0, 0.5, 1.0), n: int = 20) -> list[Report]:
    out = []
    t = np.arange(n + 1)
    for al in alphas:
        for be in betas:
            f = np.array([rising_function(int(s), be) for s in t])
            c = math.gamma(be + 1.0) / math.gamma(be + 1.0 + al)
            closed = np.array([c * rising_function(int(s), al + be) for s in t])
            lhs = left_sum_values(f, al)
            gap_l = _rel(lhs[1:], closed[1:])
            # mirror: (b - t)^(beta) on the same grid
            lhs_r = right_sum_values(f[::-1], al)
            gap_r = _rel(lhs_r[:-1], closed[::-1][:-1])
            params = {"alpha": al, "beta": be, "t_minus_a_max": n}
            out.append(report("sum^-a (t-a)^(b) = G(b+1)/G(b+1+a) (t-a)^(a+b)", params, gap_l, 1e-10))
            out.append(report("sum_b^-a (b-t)^(b) = G(b+1)/G(b+1+a) (b-t)^(a+b)", params, gap_r, 1e-10))
    return out


def order_one_running_sum(n: int = 40, seed: int = 1) -> list[Report]:
    x = _rng(seed).integers(-20, 20, n).astype(np.float64)
    ref = np.concatenate(([0.0], np.cumsum(x[1:])))
    return [report("sum^-1 f = running sum", {"n": n}, _gap(left_sum_values(x, 1.0), ref), 0.0)]


def frac_linearity(mu: float = 0.7, n: int = 24, seed: int = 2) -> list[Report]:
    rng = _rng(seed)
    x, y = rng.integers(-8, 8, (2, n)).astype(np.float64)
    lhs = left_sum_values(2.0 * x + y, mu)
    rhs = 2.0 * left_sum_values(x, mu) + left_sum_values(y, mu)
    return [report("linearity of sum^-mu", {"mu": mu, "n": n}, _rel(lhs, rhs), 1e-13)]


# -------------------------------------------------------------------- ab_ops


def ab_inverse(alphas=(0.1, 0.2, 0.3, 0.45), n: int = 32, seed: int = 3, norms=("one", "ab-standard")) -> list[Report]:
    out = []
    rng = _rng(seed)
    for al in alphas:
        x = rng.uniform(-1.0, 1.0, n)
        for norm in norms:
            gaps = inverse_relations_check(Signal(0, x), ABConfig.named(al, norm))
            for name, gap in gaps.items():
                out.append(report(name, {"alpha": al, "n": n, "b_norm": norm}, gap, 1e-8))
    return out


def ab_tq(alphas=(0.1, 0.3, 0.45), n: int = 16, signals: int = 20, seed: int = 4) -> list[Report]:
    out = []
    rng = _rng(seed)
    for al in alphas:
        cfg = ABConfig(al)
        worst_l = worst_r = 0.0
        for _ in range(signals):
            f = Signal(0, rng.uniform(-1.0, 1.0, n))
            worst_l = max(worst_l, _gap(abr_left(f, cfg).values, abr_series(f, cfg).values))
            worst_r = max(worst_r, _gap(abr_right(f, cfg).values, abr_series_right(f, cfg).values))
        params = {"alpha": al, "n": n, "signals": signals}
        out.append(report("ABR = B/(1-a) sum_k lam^k sum^-ka [left]", params, worst_l, 1e-9))
        out.append(report("ABR = B/(1-a) sum_k lam^k sum^-ka [right]", params, worst_r, 1e-9))
    return out


# ------------------------------------------------------------------ iterated


def semigroup(alphas=(0.1, 0.25, 0.4), n: int = 16, points: int = 5, seed: int = 5) -> list[Report]:
    mus = np.linspace(-1.5, 1.5, points)
    rng = _rng(seed)
    out = []
    for al in alphas:
        cfg = ABConfig(al)
        f = Signal(0, rng.uniform(-1.0, 1.0, n))
        for side, op in (("left", iterated_left), ("right", iterated_right)):
            worst = 0.0
            for mu in mus:
                for nu in mus:
                    comp = semigroup_compose(f, IterOrder(al, mu), IterOrder(al, nu), cfg, side=side)
                    direct = op(f, IterOrder(al, mu + nu), cfg)
                    worst = max(worst, _gap(comp.values.values, direct.values.values))
            out.append(report(f"(a,mu) o (a,nu) = (a,mu+nu) [{side}]",
                              {"alpha": al, "mu_nu": [float(m) for m in mus], "n": n}, worst, 1e-7))
    return out


def semigroup_exact(alpha: str = "1/4", n: int = 10, max_order: int = 3, seed: int = 6) -> list[Report]:
    rng = _rng(seed)
    f = [Fraction(int(v)) for v in rng.integers(-9, 10, n)]
    bad = 0
    for m in range(max_order + 1):
        inner = {k: exact.exact_iterated_left(f, alpha, k) for k in range(max_order + 1)}
        for k in range(max_order + 1):
            bad += exact.exact_iterated_left(inner[k], alpha, m) != exact.exact_iterated_left(f, alpha, m + k)
    return [report("(a,m) o (a,k) = (a,m+k) [exact]", {"alpha": alpha, "max_order": max_order}, bad, 0)]


def iterated_vs_abr(alphas=(0.1, 0.3), n: int = 12, orders=(1, 2, 3), seed: int = 7) -> list[Report]:
    out = []
    rng = _rng(seed)
    for al in alphas:
        cfg = ABConfig.named(al, "ab-standard")
        f = Signal(0, rng.uniform(-1.0, 1.0, n))
        gl, gr = f, f
        for m in orders:
            gl, gr = abr_left(gl, cfg), abr_right(gr, cfg)
            params = {"alpha": al, "n_fold": m, "n": n}
            il = iterated_left(f, IterOrder(al, -m), cfg).values.values
            ir = iterated_right(f, IterOrder(al, -m), cfg).values.values
            out.append(report("(a,-n) = n-fold ABR [left]", params, _rel(il, gl.values), 1e-8))
            out.append(report("(a,-n) = n-fold ABR [right]", params, _rel(ir, gr.values), 1e-8))
    return out


def iterated_vs_absum(alpha: float = 0.3, n: int = 12, orders=(1, 2, 3), seed: int = 8) -> list[Report]:
    f = Signal(0, _rng(seed).uniform(-1.0, 1.0, n))
    cfg = ABConfig.named(alpha, "ab-standard")
    out = []
    gl, gr = f, f
    for m in orders:
        gl, gr = ab_sum_left(gl, cfg), ab_sum_right(gr, cfg)
        il = iterated_left(f, IterOrder(alpha, m), cfg).values.values
        ir = iterated_right(f, IterOrder(alpha, m), cfg).values.values
        params = {"alpha": alpha, "n_fold": m}
        out.append(report("(a,n) = n-fold AB sum [left]", params, _rel(il, gl.values), 1e-12))
        out.append(report("(a,n) = n-fold AB sum [right]", params, _rel(ir, gr.values), 1e-12))
    return out


def iterated_vs_absum_exact(alpha: str = "1/4", n: int = 10, orders=(1, 2, 3), seed: int = 9) -> list[Report]:
    rng = _rng(seed)
    f = [Fraction(int(p), int(q)) for p, q in zip(rng.integers(-9, 10, n), rng.integers(1, 6, n))]
    out = []
    gl, gr = f, f
    for m in orders:
        gl, gr = exact.exact_ab_sum_left(gl, alpha), exact.exact_ab_sum_right(gr, alpha)
        bad = (gl != exact.exact_iterated_left(f, alpha, m)) + (gr != exact.exact_iterated_right(f, alpha, m))
        out.append(report("(a,n) = n-fold AB sum [exact]", {"alpha": alpha, "n_fold": m}, bad, 0))
    return out


def iterated_alpha_zero(n: int = 12, seed: int = 10) -> list[Report]:
    f = Signal(0, _rng(seed).uniform(-1.0, 1.0, n))
    worst = 0.0
    for mu in (-1.5, -1.0, 0.5, 2.0):
        for op in (iterated_left, iterated_right):
            worst = max(worst, _gap(op(f, IterOrder(0.0, mu)).values.values, f.values))
    return [report("(0,mu) = identity", {"n": n}, worst, 0.0)]


def iterated_kernel_route(alpha: float = 0.3, mu: float = 1.5, n: int = 12, seed: int = 11) -> list[Report]:
    f = Signal(0, _rng(seed).uniform(-1.0, 1.0, n))
    o = IterOrder(alpha, mu)
    out = []
    for side, op in (("left", iterated_left), ("right", iterated_right)):
        gap = _gap(op(f, o).values.values, iterated_kernel_form(f, o, side=side).values.values)
        out.append(report(f"kernel form = operator form [{side}]", {"alpha": alpha, "mu": mu}, gap, 1e-10))
    return out


def iterated_monomial(alpha: float = 0.3, mus=(1.0, 1.5, -0.5), gamma: float = 1.5, n: int = 15) -> list[Report]:
    t = np.arange(n + 1)
    f = Signal(0, np.array([rising_function(int(s), gamma - 1.0) for s in t]))
    out = []
    for mu in mus:
        o = IterOrder(alpha, mu)
        got = iterated_left(f, o).values.values[1:]
        ref = np.array([monomial_image(o, None, gamma, int(s)) for s in t[1:]])
        out.append(report("image of (t-a)^(g-1)", {"alpha": alpha, "mu": mu, "gamma": gamma}, _rel(got, ref), 1e-10))
    return out


def iterated_linearity(alpha: float = 0.25, mu: float = -0.7, n: int = 12, seed: int = 12) -> list[Report]:
    rng = _rng(seed)
    x, y = rng.uniform(-1.0, 1.0, (2, n))
    o = IterOrder(alpha, mu)

    def op(v):
        return iterated_left(Signal(0, v), o).values.values

    return [report("linearity in f", {"alpha": alpha, "mu": mu}, _rel(op(2 * x - y), 2 * op(x) - op(y)), 1e-10)]


def ibp(
    cases=((0.4, 1.0, 1e-9), (0.4, 2.0, 1e-9), (0.3, -1.0, 1e-9), (0.3, 1.3, 1e-7)),
    n: int = 10,
    pairs: int = 20,
    seed: int = 13,
) -> list[Report]:
    rng = _rng(seed)
    out = []
    for al, mu, tol in cases:
        worst = 0.0
        for _ in range(pairs):
            f, g = (Signal(0, v) for v in rng.uniform(-1.0, 1.0, (2, n)))
            worst = max(worst, integration_by_parts_check(f, g, IterOrder(al, mu)))
        out.append(report("sum g L f = sum f R g", {"alpha": al, "mu": mu, "n": n, "pairs": pairs}, worst, tol))
    return out


def transform_rule(
    alpha: float = 0.3, mus=(1.0, 1.5, -1.0), zs=(0.9,), n: int = 96, tol: float = 1e-6
) -> list[Report]:
    """Transform of the iterated image of ``f = 1`` over the transform of
    ``f``, against the multiplier ``laplace_symbol``."""
    f = Signal(0, np.ones(n))
    cfg = ABConfig(alpha)
    out = []
    for mu in mus:
        o = IterOrder(alpha, mu)
        g = iterated_left(f, o, cfg).values
        for z in zs:
            kg = empirical_transform(g, z, tol=1e-10)
            kf = empirical_transform(f, z, tol=1e-10)
            ratio, sym = kg.value / kf.value, laplace_symbol(o, cfg, z)
            out.append(report("K(L f) / K(f) = ((1-a)/B + a z^-a / B)^mu",
                              {"alpha": alpha, "mu": mu, "z": z, "n": n}, abs(ratio - sym), tol))
    return out


# ------------------------------------------------------------------- laplace


def _ml_envelope(alpha: float, lam: float, beta: float, probe: int = 300) -> Envelope:
    # |E(lam, t)| <= E(|lam|, t), which grows like (1 - |lam|^(1/alpha))^-t;
    # the constant is measured on a probe horizon and doubled
    g = 1.0 / (1.0 - abs(lam) ** (1.0 / alpha))
    tab = ml_table(MLParams(alpha, abs(lam), beta), probe)[1:]
    t = np.arange(1, probe + 1)
    return Envelope(2.0 * float(np.max(tab / g**t)), 0.0, g)


def laplace_pairs(zs=(0.5, 0.8, 1.2), mus=(0.5, 1.0, 2.0), alphas=(0.3, 0.5), tol: float = 1e-12, cap: float = 1e-8) -> list[Report]:
    out = []

    def add(name, params, tp, closed):
        gap = abs(tp.value - closed)
        out.append(report(name, {**params, "bound": tp.tail_bound}, gap, cap,
                          ok=gap <= tp.tail_bound <= cap))

    for z in zs:
        for mu in mus:
            tp = numeric_transform(lambda t, m=mu: rising_function(t, m - 1.0), 0, z, tol, monomial_envelope(mu))
            add("K t^(mu-1) = G(mu)/z^mu", {"z": z, "mu": mu}, tp, closed_monomial(mu, z))
            base = 2.0
            tp = numeric_transform(lambda t, m=mu: rising_function(t, m - 1.0) * base**-t, 0, z, tol,
                                   monomial_envelope(mu, base))
            add("K t^(mu-1) b^-t = b^(mu-1) G(mu)/(z+b-1)^mu", {"z": z, "mu": mu, "b": base},
                tp, closed_exp_monomial(mu, base, z))
        for al in alphas:
            lam = -al / (1.0 - al)
            if not abs(lam) < 1.0:
                lam = -0.5
            for which, beta in (("E_alpha", 1.0), ("E_alpha_alpha", al)):
                env = _ml_envelope(al, lam, beta)
                h, _ = horizon(z, tol, env)
                ml_trunc = Truncation(tol=1e-14)
                tab = Signal(0, ml_table(MLParams(al, lam, beta), h, ml_trunc))
                tp = numeric_transform(tab, 0, z, tol, env, value_rel_err=1e-14)
                add(f"K {which}(lam, t) closed form", {"z": z, "alpha": al, "lambda": lam},
                    tp, closed_ml(al, lam, which, z))
        for nu in (0.5, 1.0):
            for r in rule_checks(lambda t: 1.0 / (1.0 + t), z, nu=nu, tol=tol,
                                 envelope=Envelope(0.5, 0.0, 1.0),
                                 g=lambda t: float(t), g_envelope=Envelope(1.0, 1.0, 1.0)):
                out.append(report(r["rule"], {"z": z, "nu": nu, "bound": r["bound"]}, r["gap"], cap,
                                  ok=r["gap"] <= r["bound"] <= cap))
    return out


# -------------------------------------------------------------------- solver


def solver_checks() -> list[Report]:
    out = []
    rhs = SeriesRHS([1.0], 0.3)
    sol = solve_series(0.3, 1.0, 1.0, rhs, None, 25)
    out.append(report("c_0 = b_0 / (A + (B/(1-a))^mu)", {"alpha": 0.3, "mu": 1, "A": 1},
                      abs(sol.coefficients[0] - 0.7 / 1.7), 1e-7))
    out.append(report("equation residual", {"alpha": 0.3, "mu": 1, "A": 1, "b": [1], "n_terms": 25, "t_max": 6},
                      residual(sol, rhs, t_max=6), 1e-6))
    x = tabulate(sol, 6)
    abr = abr_left(x, ABConfig(0.3)).values
    out.append(report("mu = 1: ABR x = -A x + b", {"alpha": 0.3, "t_max": 6},
                      float(np.max(np.abs(abr[1:] + x.values[1:] - 1.0))), 1e-6))
    out.append(report("coefficient identity", {"alpha": 0.3, "mu": 1, "m_max": 10},
                      recursion_check(sol, rhs), 1e-10))

    rhs2 = SeriesRHS([1.0, 0.5], 0.25)
    sol2 = solve_series(0.25, 1.5, 2.0, rhs2, None, 30)
    out.append(report("equation residual", {"alpha": 0.25, "mu": 1.5, "A": 2, "b": [1, 0.5], "n_terms": 30, "t_max": 5},
                      residual(sol2, rhs2, t_max=5), 1e-5))
    out.append(report("coefficient identity", {"alpha": 0.25, "mu": 1.5, "m_max": 10},
                      recursion_check(sol2, rhs2), 1e-10))

    res = [residual(solve_series(0.3, 1.0, 1.0, rhs, None, n), rhs, t_max=6) for n in (5, 10, 15, 20)]
    worse = sum(1 for u, v in zip(res, res[1:]) if v > u)
    out.append(report("residual shrinks with n_terms", {"n_terms": [5, 10, 15, 20]}, worse, 0))

    a = solve_series(0.3, 1.2, 1.0, SeriesRHS([1.0, 2.0], 0.3), None, 12).coefficients
    b = solve_series(0.3, 1.2, 1.0, SeriesRHS([0.5, -1.0, 3.0], 0.3), None, 12).coefficients
    ab = solve_series(0.3, 1.2, 1.0, SeriesRHS([2.5, 3.0, 3.0], 0.3), None, 12).coefficients
    out.append(report("coefficients linear in b", {"alpha": 0.3, "mu": 1.2}, _rel(ab, 2 * a + b), 1e-13))
    return out


# ------------------------------------------------------------------- suites


def _chain(*fns: Callable[[], list[Report]]):
    def run(alpha: float | None = None) -> list[Report]:
        return [r for fn in fns for r in fn()]

    return run


SUITES: dict[str, Callable[[float | None], list[Report]]] = {
    "special": _chain(rising_recurrence, kernel_vs_exact, pascal, vandermonde),
    "mittag-leffler": _chain(ml_alpha_one, ml_identities, ml_aliases, ml_tail_bound),
    "frac-sums": _chain(frac_semigroup, frac_semigroup_exact, power_rules, order_one_running_sum, frac_linearity),
    "ab": lambda alpha=None: (
        ab_inverse(**({} if alpha is None else {"alphas": (alpha,)}))
        + ab_tq(**({} if alpha is None else {"alphas": (alpha,)}))
    ),
    "semigroup": lambda alpha=None: (
        semigroup(**({} if alpha is None else {"alphas": (alpha,)})) + semigroup_exact()
    ),
    "iterated": lambda alpha=None: (
        iterated_vs_abr(**({} if alpha is None else {"alphas": (alpha,)}))
        + iterated_vs_absum(**({} if alpha is None else {"alpha": alpha}))
        + iterated_vs_absum_exact()
        + iterated_alpha_zero()
        + iterated_kernel_route()
        + iterated_monomial()
        + iterated_linearity()
    ),
    "ibp": _chain(ibp),
    "laplace": lambda alpha=None: (
        laplace_pairs(**({} if alpha is None else {"alphas": (alpha,)}))
        + transform_rule(zs=(0.6, 0.9, 1.3))
    ),
    "solver": _chain(solver_checks),
}


def suite_names() -> list[str]:
    return [*SUITES, "all"]


def run_suite(name: str, alpha: float | None = None) -> list[Report]:
    if name == "all":
        return [r for key in SUITES for r in SUITES[key](alpha)]
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {suite_names()}") from None
    return suite(alpha)


def failures(reports: Iterable[Report]) -> list[Report]:
    return [r for r in reports if not r["pass"]]
