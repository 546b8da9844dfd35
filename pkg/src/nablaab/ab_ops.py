r"""Atangana-Baleanu fractional differences and sums on the nabla grid.

For ``0 <= alpha < 1/2`` the Mittag-Leffler kernel
:math:`E_{\overline\alpha}(\lambda, \cdot)` with
:math:`\lambda = -\alpha/(1-\alpha)` converges and the four differences
(Caputo/Riemann-Liouville, left/right) are defined through it. The AB sums
are finite formulas and accept any ``alpha`` in ``[0, 1]``.

Base-point slots (``t = a`` for left operators, ``t = b`` for right ones)
follow the series representation of the Riemann-Liouville difference:
``ABR f(a) = B/(1-alpha) f(a)`` and ``ABC f(a) = 0``. With that choice the
inverse relations between the AB sum and the ABR difference hold on the
whole grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import rgamma

from nablaab import _kernels
from nablaab._series import binomial_sum
from nablaab.errors import DomainError, GridError
from nablaab.mittag_leffler import DEFAULT_TRUNCATION, MLParams, Truncation, ml_table
from nablaab.nabla_core import Signal, left_sum_values, right_sum_values

__all__ = [
    "ABConfig",
    "b_one",
    "b_ab_standard",
    "NORMALIZATIONS",
    "abc_left",
    "abr_left",
    "abc_right",
    "abr_right",
    "ab_sum_left",
    "ab_sum_right",
    "abr_series",
    "abr_series_right",
    "inverse_relations_check",
]


def b_one(alpha: float) -> float:
    return 1.0


def b_ab_standard(alpha: float) -> float:
    """``B(alpha) = 1 - alpha + alpha / Gamma(alpha)``, equal to 1 at both ends."""
    return 1.0 - alpha + alpha * float(rgamma(alpha))


NORMALIZATIONS: dict[str, Callable[[float], float]] = {
    "one": b_one,
    "ab-standard": b_ab_standard,
}


@dataclass(frozen=True)
class ABConfig:
    """Order ``alpha`` and normalization ``B`` of an AB operator."""

    alpha: float
    b_func: Callable[[float], float] = field(default=b_one, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not self.B > 0:
            raise DomainError(f"normalization B(alpha) must be positive, got {self.B}")

    @classmethod
    def named(cls, alpha: float, normalization: str = "one") -> ABConfig:
        try:
            return cls(alpha, NORMALIZATIONS[normalization])
        except KeyError:
            raise ValueError(
                f"unknown normalization {normalization!r}; choose from {sorted(NORMALIZATIONS)}"
            ) from None

    @property
    def B(self) -> float:
        return float(self.b_func(self.alpha))

    @property
    def lam(self) -> float:
        if self.alpha == 1.0:
            raise DomainError("lambda = -alpha/(1-alpha) is undefined at alpha = 1")
        return -self.alpha / (1.0 - self.alpha)

    @property
    def scale(self) -> float:
        """``B(alpha) / (1 - alpha)``, the prefactor of every AB difference."""
        if self.alpha == 1.0:
            raise DomainError("AB differences are undefined at alpha = 1")
        return self.B / (1.0 - self.alpha)

    def require_kernel(self) -> None:
        if not self.alpha < 0.5:
            raise DomainError(
                f"the Mittag-Leffler kernel converges only for alpha < 1/2, got {self.alpha}"
            )


def _kernel_table(cfg: ABConfig, n: int, trunc: Truncation) -> np.ndarray:
    cfg.require_kernel()
    if cfg.alpha == 0.0:
        # lambda = 0 leaves only the k = 0 term, kernel(v, 1) = 1
        return np.ones(n + 1)
    return ml_table(MLParams(cfg.alpha, cfg.lam), n, trunc)


def _pick(f: Signal, out: np.ndarray, t, lo: int, hi: int):
    if t is None:
        return Signal(f.a, out)
    if int(t) != t or not lo <= t <= hi:
        raise GridError(f"t={t} is outside the admissible range [{lo}, {hi}]")
    return float(out[int(t) - f.a])


def _left_conv(e: np.ndarray, g: np.ndarray) -> np.ndarray:
    # out[j] = sum_{i=1}^{j} e[j-i+1] g[i], out[0] = 0
    out = np.zeros(g.shape[0])
    if g.shape[0] > 1:
        out[1:] = _kernels.toeplitz_apply(e[1:g.shape[0]].copy(), g[1:])
    return out


def _right_conv(e: np.ndarray, g: np.ndarray) -> np.ndarray:
    # out[j] = sum_{i=j}^{n-2} e[i-j+1] g[i], out[n-1] = 0
    out = np.zeros(g.shape[0])
    if g.shape[0] > 1:
        out[:-1] = _kernels.toeplitz_apply(e[1:g.shape[0]].copy(), g[-2::-1])[::-1]
    return out


def abc_left(f: Signal, cfg: ABConfig, t: int | None = None, trunc: Truncation = DEFAULT_TRUNCATION):
    r"""Left AB difference of Caputo type,
    :math:`\frac{B}{1-\alpha}\sum_{s=a+1}^t \nabla f(s) E_{\overline\alpha}(\lambda, t-s+1)`."""
    e = _kernel_table(cfg, len(f), trunc)
    g = np.concatenate(([0.0], np.diff(f.values)))
    return _pick(f, cfg.scale * _left_conv(e, g), t, f.a + 1, f.b)


def abr_left(f: Signal, cfg: ABConfig, t: int | None = None, trunc: Truncation = DEFAULT_TRUNCATION):
    r"""Left AB difference of Riemann-Liouville type: the backward difference
    of :math:`\sum_{s=a+1}^t f(s) E_{\overline\alpha}(\lambda, t-s+1)`, with the
    empty inner sum at ``t = a``."""
    e = _kernel_table(cfg, len(f), trunc)
    inner = _left_conv(e, f.values)
    out = np.empty(len(f))
    out[0] = f.values[0]
    out[1:] = np.diff(inner)
    return _pick(f, cfg.scale * out, t, f.a + 1, f.b)


def abc_right(f: Signal, cfg: ABConfig, t: int | None = None, trunc: Truncation = DEFAULT_TRUNCATION):
    r"""Right AB difference of Caputo type,
    :math:`\frac{B}{1-\alpha}\sum_{s=t}^{b-1} (-\Delta f)(s) E_{\overline\alpha}(\lambda, s-t+1)`."""
    e = _kernel_table(cfg, len(f), trunc)
    g = np.concatenate((-np.diff(f.values), [0.0]))
    return _pick(f, cfg.scale * _right_conv(e, g), t, f.a, f.b - 1)


def abr_right(f: Signal, cfg: ABConfig, t: int | None = None, trunc: Truncation = DEFAULT_TRUNCATION):
    """Right AB difference of Riemann-Liouville type: ``-Delta`` applied to the
    right inner sum, with the empty inner sum at ``t = b``."""
    e = _kernel_table(cfg, len(f), trunc)
    inner = _right_conv(e, f.values)
    out = np.empty(len(f))
    out[-1] = f.values[-1]
    out[:-1] = -np.diff(inner)
    return _pick(f, cfg.scale * out, t, f.a, f.b - 1)


def ab_sum_left(f: Signal, cfg: ABConfig, t: int | None = None):
    """Left AB sum ``((1-alpha) f + alpha nabla^{-alpha} f) / B``."""
    al, B = cfg.alpha, cfg.B
    out = ((1.0 - al) * f.values + al * left_sum_values(f.values, al)) / B
    return _pick(f, out, t, f.a + 1, f.b)


def ab_sum_right(f: Signal, cfg: ABConfig, t: int | None = None):
    """Right AB sum ``((1-alpha) f + alpha nabla_b^{-alpha} f) / B``."""
    al, B = cfg.alpha, cfg.B
    out = ((1.0 - al) * f.values + al * right_sum_values(f.values, al)) / B
    return _pick(f, out, t, f.a, f.b - 1)


def _tq(f: Signal, cfg: ABConfig, trunc: Truncation, side: str) -> np.ndarray:
    cfg.require_kernel()
    lam = cfg.lam
    if lam == 0.0:
        return cfg.scale * f.values.copy()
    res = binomial_sum(
        f.values,
        cfg.alpha,
        lambda k: lam**k,
        lambda k: abs(lam),
        finite_terms=None,
        tol=trunc.tol,
        k_min=trunc.k_min,
        k_max=trunc.k_max,
        side=side,
    )
    return cfg.scale * res.values


def abr_series(f: Signal, cfg: ABConfig, t: int | None = None, trunc: Truncation = DEFAULT_TRUNCATION):
    r"""Left ABR difference as the series
    :math:`\frac{B}{1-\alpha}\left[f + \sum_{k\ge1}\lambda^k\,{}_a\nabla^{-k\alpha}f\right]`."""
    return _pick(f, _tq(f, cfg, trunc, "left"), t, f.a + 1, f.b)


def abr_series_right(f: Signal, cfg: ABConfig, t: int | None = None, trunc: Truncation = DEFAULT_TRUNCATION):
    """Right counterpart of :func:`abr_series`, built on right fractional sums."""
    return _pick(f, _tq(f, cfg, trunc, "right"), t, f.a, f.b - 1)


def inverse_relations_check(
    f: Signal,
    cfg: ABConfig,
    trunc: Truncation = DEFAULT_TRUNCATION,
    interior_only: bool = True,
) -> dict[str, float]:
    """Max gaps of the six relations tying ABR, ABC and the AB sums together.

    Left relations are measured on ``{a+1, ..., b}`` and right ones on
    ``{a, ..., b-1}``; ``interior_only`` additionally drops the first point
    next to the base point.
    """
    cfg.require_kernel()
    x = f.values
    lo = 2 if interior_only else 1
    hi = len(f) - 2 if interior_only else len(f) - 1
    left = slice(lo, len(f))
    right = slice(0, hi)

    def gap(u, v, sl):
        return float(np.max(np.abs(np.asarray(u)[sl] - np.asarray(v)[sl]), initial=0.0))

    e = _kernel_table(cfg, len(f), trunc)
    n = np.arange(len(f))
    corr_left = x[0] * cfg.scale * e[n]
    corr_right = x[-1] * cfg.scale * e[n[::-1]]
    return {
        "ABR(ABsum f) = f [left]": gap(abr_left(ab_sum_left(f, cfg), cfg, trunc=trunc).values, x, left),
        "ABsum(ABR f) = f [left]": gap(ab_sum_left(abr_left(f, cfg, trunc=trunc), cfg).values, x, left),
        "ABR(ABsum f) = f [right]": gap(abr_right(ab_sum_right(f, cfg), cfg, trunc=trunc).values, x, right),
        "ABsum(ABR f) = f [right]": gap(ab_sum_right(abr_right(f, cfg, trunc=trunc), cfg).values, x, right),
        "ABC = ABR - f(a) B/(1-a) E(lam, t-a)": gap(
            abc_left(f, cfg, trunc=trunc).values,
            abr_left(f, cfg, trunc=trunc).values - corr_left,
            left,
        ),
        "ABC = ABR - f(b) B/(1-a) E(lam, b-t) [right]": gap(
            abc_right(f, cfg, trunc=trunc).values,
            abr_right(f, cfg, trunc=trunc).values - corr_right,
            right,
        ),
    }

