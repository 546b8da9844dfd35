"""Adaptive sums of the form ``sum_k c_k nabla^{-k alpha} f`` on a grid.

Two evaluation routes share one stopping rule:

* ``operator`` form applies each fractional sum to ``f`` and accumulates the
  results (``sum_k c_k (w_k * f)``);
* ``kernel`` form accumulates the weights first (``W = sum_k c_k w_k``) and
  applies the combined kernel once.

Stopping rule: with ``N`` the largest lag on the grid, the ratio
``w_{k+1}(n) / w_k(n)`` is largest at ``n = N`` and decreases in ``k``; the
coefficient ratio ``|c_{k+1} / c_k|`` is majorized by ``coef_ratio_bound(k)``.
Their product ``q`` majorizes every later term ratio, so once ``q < 1`` the
remainder is at most ``|c_k| M_k q / (1 - q)`` where ``M_k`` bounds the sup
norm of term ``k``.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from nablaab import _kernels
from nablaab.errors import ConvergenceError
from nablaab.nabla_core import left_sum_values, right_sum_values


class SeriesOutcome(NamedTuple):
    values: np.ndarray
    k_used: int
    tail_bound: float


def _kernel_growth(alpha: float, k: int, lag: int) -> float:
    # w_{k+1}(lag) / w_k(lag)
    nu = k * alpha
    i = np.arange(1, lag, dtype=np.float64)
    return float(np.prod((nu + alpha + i - 1.0) / (nu + i - 1.0)))


def binomial_sum(
    values: np.ndarray,
    alpha: float,
    coef: Callable[[int], float],
    coef_ratio_bound: Callable[[int], float],
    *,
    finite_terms: int | None,
    tol: float,
    k_min: int,
    k_max: int,
    side: str = "left",
    route: str = "operator",
) -> SeriesOutcome:
    """Evaluate ``sum_k coef(k) * nabla^{-k alpha} values``.

    ``finite_terms`` is the exact number of nonzero terms when the series is
    finite (non-negative integer order, or ``alpha == 0``), else ``None``.
    ``tol`` is relative to ``max|values|``.
    """
    values = np.asarray(values, dtype=np.float64)
    n = values.shape[0]
    frac_sum = left_sum_values if side == "left" else right_sum_values
    lag = n - 1
    scale = float(np.max(np.abs(values))) if n else 0.0
    if scale == 0.0:
        return SeriesOutcome(np.zeros(n), 1, 0.0)
    abs_vals = np.abs(values)

    acc = coef(0) * values.copy()
    weights = np.zeros(max(lag, 0))
    if finite_terms is not None:
        k_stop = finite_terms
    else:
        k_stop = k_max
    for k in range(1, k_stop):
        c = coef(k)
        if route == "operator":
            term = frac_sum(values, k * alpha)
            acc += c * term
        else:
            w = _kernels.kernel_column(k * alpha, lag)
            weights += c * w
        if finite_terms is not None or lag < 1:
            continue
        if k + 1 < k_min or c == 0.0:
            continue
        q = coef_ratio_bound(k) * _kernel_growth(alpha, k, lag)
        if q >= 1.0:
            continue
        if route == "operator":
            sup = float(np.max(frac_sum(abs_vals, k * alpha)))
        else:
            sup = float(np.sum(np.abs(w))) * scale
        tail = abs(c) * sup * q / (1.0 - q)
        if tail <= tol * scale:
            if route == "kernel":
                acc = _apply_kernel(acc, weights, values, side)
            return SeriesOutcome(acc, k + 1, tail)
    if finite_terms is not None or lag < 1:
        if route == "kernel":
            acc = _apply_kernel(acc, weights, values, side)
        return SeriesOutcome(acc, max(k_stop, 1), 0.0)
    raise ConvergenceError(f"series did not meet its tail bound within k_max={k_max} terms")


def _apply_kernel(acc, weights, values, side):
    out = acc.copy()
    if values.shape[0] < 2:
        return out
    if side == "left":
        out[1:] += _kernels.toeplitz_apply(weights, values[1:])
    else:
        out[:-1] += _kernels.toeplitz_apply(weights, values[-2::-1])[::-1]
    return out
