r"""Iterated AB fractional difference-sum operators.

.. math::

    {}^{AB}_{a}\nabla^{(-\alpha,\mu)} f(t) = \sum_{k\ge0}
        \binom{\mu}{k}\frac{(1-\alpha)^{\mu-k}\alpha^k}{B(\alpha)^{\mu}}
        \,{}_a\nabla^{-k\alpha} f(t)

For a non-negative integer ``mu`` the sum is finite and equals the AB sum
applied ``mu`` times; otherwise it converges for ``alpha < 1/2`` and is
truncated adaptively. ``mu = -1`` recovers the ABR difference, and the family
is a semigroup in ``mu``. Right operators use right fractional sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from nablaab._series import binomial_sum
from nablaab.ab_ops import ABConfig
from nablaab.errors import ConvergenceError, DomainError, GridError
from nablaab.mittag_leffler import DEFAULT_TRUNCATION, Truncation
from nablaab.nabla_core import (
    Signal,
    left_frac_sum,
    right_frac_sum,
    rl_frac_diff_left,
    rl_frac_diff_right,
)
from nablaab.special_fn import kernel

__all__ = [
    "IterOrder",
    "IterResult",
    "coefficients",
    "iterated_left",
    "iterated_right",
    "iterated_kernel_form",
    "monomial_image",
    "semigroup_compose",
    "integration_by_parts_check",
    "laplace_symbol",
]


def _is_nonneg_int(x: float) -> bool:
    return x >= 0 and float(x).is_integer()


@dataclass(frozen=True)
class IterOrder:
    """Order ``(-alpha, mu)``: kernel order ``alpha``, iteration exponent ``mu``."""

    alpha: float
    mu: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not math.isfinite(self.mu):
            raise DomainError("mu must be finite")
        if self.needs_series and not self.alpha < 0.5:
            raise DomainError(
                f"order (alpha={self.alpha}, mu={self.mu}) is an infinite series, "
                "which converges only for alpha < 1/2"
            )

    @property
    def is_finite(self) -> bool:
        return self.alpha == 0.0 or _is_nonneg_int(self.mu)

    @property
    def needs_series(self) -> bool:
        return not self.is_finite and self.alpha != 1.0


class IterResult(NamedTuple):
    values: Signal
    k_used: int
    tail_bound: float


def _norm(ord: IterOrder, cfg: ABConfig | None) -> float:
    if cfg is None:
        return 1.0
    if cfg.alpha != ord.alpha:
        raise ValueError(f"config alpha {cfg.alpha} does not match order alpha {ord.alpha}")
    return cfg.B


def coefficients(ord: IterOrder, B: float, count: int) -> np.ndarray:
    """The first ``count`` weights ``binom(mu,k) (1-alpha)^(mu-k) alpha^k / B^mu``."""
    al, mu = ord.alpha, ord.mu
    out = np.empty(count)
    c = ((1.0 - al) / B) ** mu
    for k in range(count):
        out[k] = c
        c *= (mu - k) / (k + 1.0) * al / (1.0 - al)
    return out


def _coef_fn(ord: IterOrder, B: float):
    al, mu = ord.alpha, ord.mu
    r = al / (1.0 - al)
    cache = [((1.0 - al) / B) ** mu]

    def coef(k: int) -> float:
        while len(cache) <= k:
            j = len(cache) - 1
            cache.append(cache[j] * (mu - j) / (j + 1.0) * r)
        return cache[k]

    def ratio_bound(k: int) -> float:
        if k < mu:
            return math.inf
        return r * max(1.0, abs(mu - k) / (k + 1.0))

    return coef, ratio_bound


def _run(f: Signal, ord: IterOrder, cfg, trunc: Truncation, side: str, route: str) -> IterResult:
    if len(f) < 2:
        raise GridError("iterated operators need a grid of at least two points")
    B = _norm(ord, cfg)
    al, mu = ord.alpha, ord.mu
    if al == 1.0:
        return _alpha_one(f, mu, B, side)
    coef, ratio_bound = _coef_fn(ord, B)
    finite = None
    if al == 0.0:
        finite = 1
    elif _is_nonneg_int(mu):
        finite = int(mu) + 1
    res = binomial_sum(
        f.values,
        al,
        coef,
        ratio_bound,
        finite_terms=finite,
        tol=trunc.tol,
        k_min=trunc.k_min,
        k_max=trunc.k_max,
        side=side,
        route=route,
    )
    return IterResult(Signal(f.a, res.values), res.k_used, res.tail_bound)


def _alpha_one(f: Signal, mu: float, B: float, side: str) -> IterResult:
    # convention: (-1, mu) is the classical sum of order mu, (-1, -mu) the
    # Riemann-Liouville difference of order mu; B(1) enters as B^-mu
    if mu == 0:
        vals = f.values.copy()
    elif mu > 0:
        op = left_frac_sum if side == "left" else right_frac_sum
        vals = op(f, mu).values
    else:
        op = rl_frac_diff_left if side == "left" else rl_frac_diff_right
        vals = op(f, -mu).values
    return IterResult(Signal(f.a, vals * B ** (-mu)), 1, 0.0)


def iterated_left(
    f: Signal,
    ord: IterOrder,
    cfg: ABConfig | None = None,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> IterResult:
    """Left iterated AB difference-sum on the grid of ``f``.

    ``cfg`` supplies the normalization ``B`` (``B = 1`` when omitted) and
    must carry the same ``alpha`` as ``ord``. The order-zero term is ``f``
    itself, so the slot at ``t = a`` holds ``((1-alpha)/B)^mu f(a)``.
    """
    return _run(f, ord, cfg, trunc, "left", "operator")


def iterated_right(
    f: Signal,
    ord: IterOrder,
    cfg: ABConfig | None = None,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> IterResult:
    """Right iterated AB difference-sum, built on right fractional sums."""
    return _run(f, ord, cfg, trunc, "right", "operator")


def iterated_kernel_form(
    f: Signal,
    ord: IterOrder,
    cfg: ABConfig | None = None,
    trunc: Truncation = DEFAULT_TRUNCATION,
    side: str = "left",
) -> IterResult:
    """Same operator through its kernel representation: the weights
    ``sum_k c_k kernel(n, k alpha)`` are accumulated first and applied to
    ``f`` once, next to the delta term ``((1-alpha)/B)^mu f(t)``."""
    return _run(f, ord, cfg, trunc, side, "kernel")


def monomial_image(
    ord: IterOrder,
    cfg: ABConfig | None,
    gamma: float,
    t_minus_a: int,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> float:
    """Image of ``(t-a)^(gamma-1)`` under the left operator, at ``t - a``.

    Uses ``nabla^{-k alpha} (t-a)^(gamma-1) = Gamma(gamma)/Gamma(gamma+k alpha)
    (t-a)^(gamma+k alpha-1)``; by reflection the same number is the image of
    ``(b-t)^(gamma-1)`` under the right operator at ``b - t = t_minus_a``.
    """
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    n = int(t_minus_a)
    if n != t_minus_a or n < 1:
        raise DomainError("t - a must be a positive integer")
    B = _norm(ord, cfg)
    al, mu = ord.alpha, ord.mu
    g0 = math.gamma(gamma)
    if al == 1.0:
        if mu < 0:
            raise DomainError("the alpha = 1 difference convention has no closed monomial image here")
        return B ** (-mu) * g0 * kernel(n, gamma + mu)
    coef, ratio_bound = _coef_fn(ord, B)
    limit = 1 if al == 0.0 else (int(mu) + 1 if _is_nonneg_int(mu) else trunc.k_max)
    total = 0.0
    for k in range(limit):
        nu = gamma + k * al
        term = coef(k) * g0 * kernel(n, nu)
        total += term
        if limit < trunc.k_max or k + 1 < trunc.k_min:
            continue
        i = np.arange(1, n, dtype=np.float64)
        growth = float(np.prod((nu + al + i - 1.0) / (nu + i - 1.0)))
        q = ratio_bound(k) * growth
        if q < 1.0 and abs(term) * q / (1.0 - q) <= trunc.tol * max(abs(total), 1e-300):
            return total
    if limit < trunc.k_max:
        return total
    raise ConvergenceError("monomial image series did not converge")


def semigroup_compose(
    f: Signal,
    ord1: IterOrder,
    ord2: IterOrder,
    cfg: ABConfig | None = None,
    trunc: Truncation = DEFAULT_TRUNCATION,
    side: str = "left",
) -> IterResult:
    """Apply order ``ord2`` and then ``ord1``; by the semigroup law this
    equals the single operator of order ``(alpha, mu1 + mu2)``.

    The reported tail bound is the sum of the two stage bounds.
    """
    if ord1.alpha != ord2.alpha:
        raise ValueError(f"orders must share alpha, got {ord1.alpha} and {ord2.alpha}")
    op = iterated_left if side == "left" else iterated_right
    inner = op(f, ord2, cfg, trunc)
    outer = op(inner.values, ord1, cfg, trunc)
    return IterResult(outer.values, max(inner.k_used, outer.k_used), inner.tail_bound + outer.tail_bound)


def integration_by_parts_check(
    f: Signal,
    g: Signal,
    ord: IterOrder,
    cfg: ABConfig | None = None,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> float:
    """``|sum g * L f - sum f * R g|`` over ``s = a+1, ..., b-1``."""
    if f.a != g.a or len(f) != len(g):
        raise GridError("f and g must share the grid {a, ..., b}")
    if len(f) < 3:
        raise GridError("integration by parts needs at least one interior point")
    lf = iterated_left(f, ord, cfg, trunc).values.values
    rg = iterated_right(g, ord, cfg, trunc).values.values
    inner = slice(1, len(f) - 1)
    lhs = math.fsum(g.values[inner] * lf[inner])
    rhs = math.fsum(f.values[inner] * rg[inner])
    return abs(lhs - rhs)


def laplace_symbol(ord: IterOrder, cfg: ABConfig | None, z: float) -> float:
    """Multiplier ``((1-alpha)/B + alpha z^-alpha / B)^mu`` of the left
    operator under the nabla Laplace transform, for real ``0 < z < 2``."""
    if not 0.0 < z < 2.0:
        raise DomainError(f"z must lie in (0, 2), got {z}")
    B = _norm(ord, cfg)
    al = ord.alpha
    return ((1.0 - al) / B + al / B * z ** (-al)) ** ord.mu
