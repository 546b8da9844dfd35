"""Hot numeric kernels, with a numba path and a pure-numpy fallback.

The numba path is used when numba imports and ``NABLAAB_DISABLE_NUMBA`` is
unset (or ``0``). Both implementations are importable under explicit names
(``*_nb`` / ``*_np``) so they can be tested and benchmarked side by side.
"""

from __future__ import annotations

import math
import os

import numpy as np

_FLAG = os.environ.get("NABLAAB_DISABLE_NUMBA", "0").strip().lower()

try:  # pragma: no cover - depends on the environment
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _FLAG in ("", "0", "false", "no")

# Below this size plain summation is used; above it, compensated summation.
COMPENSATE_ABOVE = 64


def _njit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


# ---------------------------------------------------------------------------
# kernel columns: w[n-1] = Gamma(n + nu - 1) / (Gamma(n) Gamma(nu)), n = 1..N


def kernel_column_np(nu: float, n_max: int) -> np.ndarray:
    if n_max <= 0:
        return np.zeros(0)
    i = np.arange(1, n_max, dtype=np.float64)
    ratios = (nu + i - 1.0) / i
    out = np.empty(n_max)
    out[0] = 1.0
    np.cumprod(ratios, out=out[1:])
    return out


@_njit
def kernel_column_nb(nu, n_max):
    out = np.empty(n_max)
    if n_max == 0:
        return out
    out[0] = 1.0
    for n in range(1, n_max):
        out[n] = out[n - 1] * ((nu + n - 1.0) / n)
    return out


@_njit
def pairwise_product(x):
    n = x.shape[0]
    if n == 0:
        return 1.0
    if n <= 8:
        p = 1.0
        for i in range(n):
            p *= x[i]
        return p
    h = n // 2
    return pairwise_product(x[:h]) * pairwise_product(x[h:])


# ---------------------------------------------------------------------------
# lower-triangular Toeplitz apply: out[j] = sum_{i<=j} w[j-i] * f[i]


def toeplitz_apply_np(w: np.ndarray, f: np.ndarray) -> np.ndarray:
    n = f.shape[0]
    if n == 0:
        return np.zeros(0)
    if n <= COMPENSATE_ABOVE:
        return np.convolve(f, w[:n])[:n]
    out = np.empty(n)
    for j in range(n):
        out[j] = math.fsum(w[j::-1] * f[: j + 1])
    return out


@_njit
def toeplitz_apply_nb(w, f):
    n = f.shape[0]
    out = np.empty(n)
    compensate = n > 64
    for j in range(n):
        s = 0.0
        c = 0.0
        for i in range(j + 1):
            x = w[j - i] * f[i]
            if compensate:
                t = s + x
                if abs(s) >= abs(x):
                    c += (s - t) + x
                else:
                    c += (x - t) + s
                s = t
            else:
                s += x
        out[j] = s + c
    return out


# ---------------------------------------------------------------------------
# Mittag-Leffler series over v = 0..V
#
#   term_k(v) = (rho)_k lam^k / k! * kernel(v, k alpha + beta)
#
# The tail after term k is bounded by |term_k| q / (1 - q) once q < 1, where
# q majorizes every later term ratio. Returns (values, k_used, tail, abs_sum).


@_njit
def _ml_point_nb(alpha, beta, rho, lam, v, tol, k_min, k_max):
    if v == 0:
        # only a zero exponent survives at v = 0 (0^(0) = 1)
        s = 0.0
        c = 1.0
        for k in range(k_max):
            nu = k * alpha + beta
            if nu == 1.0:
                s += c
            if nu > 1.0:
                break
            c *= lam * (rho + k) / (k + 1.0)
        return s, 0, 0.0, abs(s)
    s = 0.0
    comp = 0.0
    abs_sum = 0.0
    coef = 1.0  # (rho)_k lam^k / k!
    for k in range(k_max):
        nu = k * alpha + beta
        kern = 1.0
        for i in range(1, v):
            kern *= (nu + i - 1.0) / i
        term = coef * kern
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        abs_sum += abs(term)
        if lam == 0.0:
            return s + comp, k + 1, 0.0, abs_sum
        if k + 1 >= k_min and nu > 1.0:
            ratio = 1.0
            for i in range(1, v):
                ratio *= (nu + alpha + i - 1.0) / (nu + i - 1.0)
            growth = (rho + k) / (k + 1.0)
            if growth < 1.0:
                growth = 1.0
            q = abs(lam) * growth * ratio
            if q < 1.0:
                tail = abs(term) * q / (1.0 - q)
                total = s + comp
                if tail <= tol * abs(total) or tail == 0.0:
                    return total, k + 1, tail, abs_sum
        coef *= lam * (rho + k) / (k + 1.0)
    return s + comp, -1, np.inf, abs_sum


@_njit
def ml_series_nb(alpha, beta, rho, lam, v_max, tol, k_min, k_max):
    n = v_max + 1
    vals = np.empty(n)
    used = np.empty(n, dtype=np.int64)
    tails = np.empty(n)
    abs_sums = np.empty(n)
    for v in range(n):
        s, k, tail, a = _ml_point_nb(alpha, beta, rho, lam, v, tol, k_min, k_max)
        vals[v] = s
        used[v] = k
        tails[v] = tail
        abs_sums[v] = a
    return vals, used, tails, abs_sums


def ml_series_np(alpha, beta, rho, lam, v_max, tol, k_min, k_max):
    n = v_max + 1
    vals = np.zeros(n)
    used = np.full(n, -1, dtype=np.int64)
    tails = np.full(n, np.inf)
    abs_sums = np.zeros(n)
    # v = 0 handled separately, as in the compiled path
    coef = 1.0
    for k in range(k_max):
        nu = k * alpha + beta
        if nu == 1.0:
            vals[0] += coef
        if nu > 1.0:
            break
        coef *= lam * (rho + k) / (k + 1.0)
    abs_sums[0] = abs(vals[0])
    used[0] = 0
    tails[0] = 0.0
    if n == 1:
        return vals, used, tails, abs_sums

    i = np.arange(1, n - 1, dtype=np.float64)
    active = np.ones(n - 1, dtype=bool)
    s = np.zeros(n - 1)
    coef = 1.0
    for k in range(k_max):
        nu = k * alpha + beta
        col = kernel_column_np(nu, n - 1)  # kernel(v, nu) for v = 1..n-1
        term = coef * col
        s = np.where(active, s + term, s)
        abs_sums[1:] += np.where(active, np.abs(term), 0.0)
        if lam == 0.0:
            used[1:][active] = k + 1
            tails[1:][active] = 0.0
            active[:] = False
        elif k + 1 >= k_min and nu > 1.0:
            factors = (nu + alpha + i - 1.0) / (nu + i - 1.0)
            ratio = np.concatenate(([1.0], np.cumprod(factors)))
            growth = max(1.0, (rho + k) / (k + 1.0))
            q = abs(lam) * growth * ratio
            with np.errstate(divide="ignore", invalid="ignore"):
                tail = np.where(q < 1.0, np.abs(term) * q / (1.0 - q), np.inf)
            done = active & (q < 1.0) & ((tail <= tol * np.abs(s)) | (tail == 0.0))
            used[1:][done] = k + 1
            tails[1:][done] = tail[done]
            active &= ~done
        if not active.any():
            break
        coef *= lam * (rho + k) / (k + 1.0)
    vals[1:] = s
    return vals, used, tails, abs_sums


if USE_NUMBA:
    kernel_column = kernel_column_nb
    toeplitz_apply = toeplitz_apply_nb
    ml_series = ml_series_nb
else:
    kernel_column = kernel_column_np
    toeplitz_apply = toeplitz_apply_np
    ml_series = ml_series_np


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
