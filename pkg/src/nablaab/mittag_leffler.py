r"""Nabla discrete Mittag-Leffler functions.

.. math::

    E^{\rho}_{\overline{\alpha,\beta}}(\lambda, v) = \sum_{k\ge 0}
        \frac{(\rho)_k \lambda^k}{k!}
        \frac{v^{\overline{k\alpha+\beta-1}}}{\Gamma(k\alpha+\beta)}

with the one- and two-parameter functions as the cases ``beta = 1`` and
``rho = 1``. Every term is evaluated through :func:`nablaab.special_fn.kernel`
(``v^(nu-1) / Gamma(nu) = kernel(v, nu)``), so the same code path serves all
three families.

The series is summed in double precision. When the terms cancel badly
(large ``v`` with ``lambda < 0`` and ``alpha`` near 1) the rounding error can
exceed the tolerance; those points are re-summed with mpmath at a working
precision sized from the observed cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import mpmath
import numpy as np

from nablaab import _kernels
from nablaab.errors import ConvergenceError, DomainError

__all__ = [
    "MLParams",
    "Truncation",
    "MLResult",
    "ml_eval",
    "ml_table",
    "ml_table_full",
    "MLTable",
    "ml_forward_identities",
]

_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class MLParams:
    alpha: float
    lam: float
    beta: float = 1.0
    rho: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not abs(self.lam) < 1:
            raise DomainError(f"the series needs |lambda| < 1, got {self.lam}")


@dataclass(frozen=True)
class Truncation:
    """Stopping rule for every adaptive series in the package."""

    tol: float = 1e-12
    k_max: int = 10_000
    k_min: int = 8

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.k_max < 1:
            raise ValueError("k_max must be at least 1")


DEFAULT_TRUNCATION = Truncation()


class MLResult(NamedTuple):
    value: float
    terms: int
    tail_bound: float
    extended: bool


def _growth_bound(nu: float, alpha: float, v: int) -> float:
    # kernel(v, nu + alpha) / kernel(v, nu), rounded up; a bound, so float is enough
    i = np.arange(1, v, dtype=np.float64)
    return float(np.exp(np.sum(np.log1p(alpha / (nu + i - 1.0))))) * (1.0 + 1e-12)


def _mp_points(p: MLParams, vs: list[int], trunc: Truncation, dps: int):
    """Re-sum the series at the grid points ``vs`` (all >= 1) in mpmath.

    All points share one pass over ``k``: the kernel column in ``v`` is a
    running product, so each term costs one multiplication per grid point.
    """
    v_top = max(vs)
    out = {}
    with mpmath.workdps(dps):
        lam, alpha = mpmath.mpf(p.lam), mpmath.mpf(p.alpha)
        beta, rho = mpmath.mpf(p.beta), mpmath.mpf(p.rho)
        sums = {v: mpmath.mpf(0) for v in vs}
        pending = set(vs)
        coef = mpmath.mpf(1)
        for k in range(trunc.k_max):
            nu = k * alpha + beta
            col = [mpmath.mpf(0), mpmath.mpf(1)]
            for n in range(1, v_top):
                col.append(col[-1] * (nu + n - 1) / n)
            nu_f = float(nu)
            for v in sorted(pending):
                term = coef * col[v]
                sums[v] += term
                if p.lam == 0:
                    out[v] = (float(sums[v]), k + 1, 0.0)
                elif k + 1 >= trunc.k_min and nu_f > 1:
                    q = abs(p.lam) * max(1.0, (p.rho + k) / (k + 1)) * _growth_bound(nu_f, p.alpha, v)
                    if q < 1:
                        tail = float(abs(term)) * q / (1 - q)
                        if tail <= trunc.tol * float(abs(sums[v])) or tail == 0:
                            out[v] = (float(sums[v]), k + 1, tail)
            pending.difference_update(out)
            if not pending:
                return out
            coef *= lam * (rho + k) / (k + 1)
    raise ConvergenceError(
        f"Mittag-Leffler series at v={min(pending)} did not converge in {trunc.k_max} terms"
    )


@lru_cache(maxsize=64)
def _run_cached(p: MLParams, v_max: int, trunc: Truncation):
    vals, used, tails, abs_sums = _kernels.ml_series(
        float(p.alpha), float(p.beta), float(p.rho), float(p.lam),
        int(v_max), float(trunc.tol), int(trunc.k_min), int(trunc.k_max),
    )
    rounding = (2.0 + np.sqrt(np.arange(v_max + 1))) * _EPS * abs_sums
    extended = (used < 0) | (rounding > trunc.tol * np.abs(vals))
    redo = [int(v) for v in np.nonzero(extended)[0]]
    if redo:
        digits = 30.0
        with np.errstate(divide="ignore"):
            ratios = abs_sums[redo] / np.abs(vals[redo])
        finite = ratios[np.isfinite(ratios)]
        if finite.size == len(redo):
            digits = math.log10(max(float(np.max(finite)), 1.0))
        dps = int(20 + digits - math.log10(trunc.tol))
        for v, (val, k, tail) in _mp_points(p, redo, trunc, dps).items():
            vals[v], used[v], tails[v] = val, k, tail
    for arr in (vals, used, tails, extended):
        arr.setflags(write=False)
    return vals, used, tails, extended


def _run(p: MLParams, v_max: int, trunc: Truncation):
    return _run_cached(p, int(v_max), trunc)


def ml_eval(params: MLParams, v: int, trunc: Truncation = DEFAULT_TRUNCATION) -> MLResult:
    """Evaluate the three-parameter function at a grid point ``v >= 0``.

    At ``v = 0`` only a term with exponent exactly zero survives, so the
    value is 1 for ``beta = 1`` and 0 otherwise (barring ``k alpha + beta = 1``
    for some ``k >= 1``).
    """
    if int(v) != v or v < 0:
        raise DomainError(f"v must be a non-negative integer, got {v}")
    v = int(v)
    vals, used, tails, extended = _run(params, v, trunc)
    return MLResult(float(vals[v]), int(used[v]), float(tails[v]), bool(extended[v]))


def ml_table(params: MLParams, v_max: int, trunc: Truncation = DEFAULT_TRUNCATION) -> np.ndarray:
    """Values at ``v = 0, 1, ..., v_max``."""
    if v_max < 0:
        raise DomainError("v_max must be non-negative")
    return _run(params, int(v_max), trunc)[0].copy()


class MLTable(NamedTuple):
    values: np.ndarray
    terms: np.ndarray
    tail_bounds: np.ndarray
    extended: np.ndarray


def ml_table_full(params: MLParams, v_max: int, trunc: Truncation = DEFAULT_TRUNCATION) -> MLTable:
    """:func:`ml_table` plus the per-point term counts, tail bounds and
    extended-precision flags."""
    if v_max < 0:
        raise DomainError("v_max must be non-negative")
    return MLTable(*(a.copy() for a in _run(params, int(v_max), trunc)))


def _e(alpha, lam, beta, rho, v, trunc) -> float:
    return ml_eval(MLParams(alpha, lam, beta, rho), v, trunc).value


def ml_forward_identities(
    params: MLParams,
    v: int,
    trunc: Truncation = DEFAULT_TRUNCATION,
    gamma: float = 1.0,
) -> list[dict]:
    """Both sides of the four difference/summation identities at ``v``
    (origin ``a = 0``).

    The beta-lowering difference identity is skipped at ``v = 1`` when
    ``beta = 1``: with ``0^(0) = 1`` the step from ``v = 0`` carries an extra
    unit jump that the right-hand side does not see.
    """
    from nablaab.nabla_core import Signal, left_frac_sum

    al, lam, be, rho = params.alpha, params.lam, params.beta, params.rho
    out = []

    def record(name, lhs, rhs):
        gap = None if lhs is None else abs(lhs - rhs)
        out.append({"identity": name, "v": v, "lhs": lhs, "rhs": rhs, "gap": gap})

    if v >= 1:
        lhs = _e(al, lam, 1.0, 1.0, v, trunc) - _e(al, lam, 1.0, 1.0, v - 1, trunc)
        record("nabla E_a = lam E_aa", lhs, lam * _e(al, lam, al, 1.0, v, trunc))
        rhs = _e(al, lam, be - 1.0, rho, v, trunc)
        if be == 1.0 and v == 1:
            record("nabla E^r_ab = E^r_a(b-1)", None, rhs)
        else:
            lhs = _e(al, lam, be, rho, v, trunc) - _e(al, lam, be, rho, v - 1, trunc)
            record("nabla E^r_ab = E^r_a(b-1)", lhs, rhs)
        table = ml_table(MLParams(al, lam, be, rho), v, trunc)
        record("sum E_ab = E_a(b+1)", math.fsum(table[1 : v + 1]),
               _e(al, lam, be + 1.0, rho, v, trunc))
        lhs = left_frac_sum(Signal(0, table), gamma, v)
        record("nabla^-g E^r_ab = E^r_a(b+g)", lhs, _e(al, lam, be + gamma, rho, v, trunc))
    return out
