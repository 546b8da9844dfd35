r"""Nabla discrete Laplace transform on the real segment ``0 < z < 2``.

.. math:: \mathcal K_a f(z) = \sum_{t=a+1}^{\infty} (1-z)^{t-a-1} f(t)

The infinite sum is truncated at a horizon chosen from a growth envelope
``|f(a+n)| <= C n^d g^n`` supplied by the caller, so the reported
``tail_bound`` (truncation plus a floating-point rounding allowance) is a
bound rather than an estimate whenever the envelope is valid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from nablaab.errors import ConvergenceError, DomainError
from nablaab.nabla_core import Signal, convolve, left_sum_values

__all__ = [
    "Envelope",
    "TransformPoint",
    "numeric_transform",
    "closed_monomial",
    "monomial_envelope",
    "closed_exp_monomial",
    "closed_ml",
    "rule_checks",
    "empirical_transform",
    "horizon",
]

_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class Envelope:
    """Growth bound ``|f(a+n)| <= scale * n**degree * growth**n`` for ``n >= 1``."""

    scale: float = 1.0
    degree: float = 0.0
    growth: float = 1.0

    def after_sum(self, nu: float) -> Envelope:
        """Envelope of the order-``nu`` left fractional sum of such a function."""
        g = max(self.growth, 1.0)
        c = self.scale * (1.0 + nu) ** nu / math.gamma(nu + 1.0)
        return Envelope(c, self.degree + nu, g)

    def after_nabla(self) -> Envelope:
        g = self.growth
        return Envelope(self.scale * (1.0 + 1.0 / min(g, 1.0)), self.degree, g)

    def convolved(self, other: Envelope) -> Envelope:
        g = max(self.growth, other.growth, 1.0)
        return Envelope(self.scale * other.scale * g, self.degree + other.degree + 1.0, g)


@dataclass(frozen=True)
class TransformPoint:
    z: float
    value: float
    terms_used: int
    tail_bound: float


def _check_z(z: float) -> float:
    z = float(z)
    if not 0.0 < z < 2.0:
        raise DomainError(f"the transform needs |1 - z| < 1 with real z > 0, got z={z}")
    return z


def horizon(z: float, tol: float, env: Envelope, t_max: int = 100_000) -> tuple[int, float]:
    """Smallest ``N`` whose envelope tail beyond ``a + N`` is below ``tol``."""
    q = abs(1.0 - _check_z(z))
    if q == 0.0:
        return 1, 0.0
    if env.growth * q >= 1.0:
        raise DomainError(f"envelope growth {env.growth} is too fast for z={z}")
    n = np.arange(1, t_max + 2, dtype=np.float64)
    log_term = (
        math.log(env.scale) + env.degree * np.log(n) + n * math.log(env.growth) + (n - 1) * math.log(q)
    )
    ratio = env.growth * q * np.maximum(1.0, ((n + 1) / n) ** env.degree)
    # tail after N terms starts at index N (n = N + 1)
    with np.errstate(over="ignore", divide="ignore"):
        tail = np.where(ratio < 1.0, np.exp(log_term) / (1.0 - ratio), np.inf)
    ok = np.nonzero(tail[1:] <= tol)[0]
    if ok.size == 0:
        raise ConvergenceError(f"transform horizon exceeds t_max={t_max}")
    big_n = int(ok[0]) + 1
    return big_n, float(tail[big_n])


def _sample(f, a: int, n: int) -> np.ndarray:
    if isinstance(f, Signal):
        if f.a != a:
            raise DomainError(f"signal origin {f.a} differs from transform origin {a}")
        if f.b < a + n:
            raise ConvergenceError(
                f"signal horizon b={f.b} is shorter than the required a+{n}"
            )
        return np.asarray(f.values[1 : n + 1], dtype=np.float64)
    return np.array([float(f(a + j)) for j in range(1, n + 1)])


def _weighted_sum(z: float, vals: np.ndarray) -> tuple[float, float]:
    w = (1.0 - z) ** np.arange(vals.shape[0])
    terms = w * vals
    return math.fsum(terms), float(4.0 * _EPS * np.sum(np.abs(terms)))


def numeric_transform(
    f,
    a: int,
    z: float,
    tol: float = 1e-12,
    envelope: Envelope = Envelope(),
    t_max: int = 100_000,
    value_rel_err: float = 0.0,
) -> TransformPoint:
    """Truncated transform of ``f`` (a callable on integers, or a Signal long
    enough to reach the horizon).

    ``value_rel_err`` is the relative accuracy of the samples themselves
    (for example tabulated series values); it widens the bound accordingly.
    """
    z = _check_z(z)
    n, tail = horizon(z, tol, envelope, t_max)
    vals = _sample(f, a, n)
    value, rounding = _weighted_sum(z, vals)
    if value_rel_err:
        w = np.abs(1.0 - z) ** np.arange(n)
        rounding += value_rel_err * float(np.sum(w * np.abs(vals)))
    return TransformPoint(z, value, n, tail + rounding)


def empirical_transform(values: Signal, z: float, tol: float = 1e-12) -> TransformPoint:
    """Transform of a tabulated signal whose growth is not known in advance.

    The tail is estimated from the last tabulated term and the change between
    the full horizon and its first half; the signal must be long enough for
    both to fall below ``tol``.
    """
    z = _check_z(z)
    vals = values.values[1:]
    n = vals.shape[0]
    full, rounding = _weighted_sum(z, vals)
    half, _ = _weighted_sum(z, vals[: n // 2])
    last = abs((1.0 - z) ** (n - 1) * vals[-1])
    est = abs(full - half) + last
    if est > tol:
        raise ConvergenceError(f"signal too short for the transform at z={z}: tail ~ {est:.3g}")
    return TransformPoint(z, full, n, est + rounding)


def monomial_envelope(mu: float, base: float = 1.0) -> Envelope:
    """Envelope of ``t^(mu-1) base^-t`` on ``t >= 1``.

    The ratio of the rising power to the ordinary power is monotone in
    ``t``, running from ``Gamma(mu)`` at ``t = 1`` towards 1.
    """
    return Envelope(max(1.0, math.gamma(mu)), mu - 1.0, 1.0 / base)


def closed_monomial(mu: float, z: float) -> float:
    """Transform of ``(t-a)^(mu-1)``: ``Gamma(mu) / z^mu``."""
    z = _check_z(z)
    if mu <= 0 and float(mu).is_integer():
        raise DomainError(f"Gamma(mu) has a pole at mu={mu}")
    return math.gamma(mu) / z**mu


def closed_exp_monomial(mu: float, base: float, z: float) -> float:
    """Transform of ``t^(mu-1) base^-t``: ``base^(mu-1) Gamma(mu) / (z+base-1)^mu``."""
    z = float(z)
    if not abs(1.0 - z) < base:
        raise DomainError(f"need |1 - z| < base, got z={z}, base={base}")
    if mu <= 0 and float(mu).is_integer():
        raise DomainError(f"Gamma(mu) has a pole at mu={mu}")
    return base ** (mu - 1.0) * math.gamma(mu) / (z + base - 1.0) ** mu


def closed_ml(alpha: float, lam: float, which: str, z: float) -> float:
    """Transform of ``E_alpha(lam, t-a)`` (``which='E_alpha'``) or of
    ``E_{alpha,alpha}(lam, t-a)`` (``which='E_alpha_alpha'``)."""
    z = _check_z(z)
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if not abs(lam) < 1.0:
        raise DomainError(f"need |lambda| < 1, got {lam}")
    den = z**alpha - lam
    if den == 0.0:
        raise DomainError("z^alpha equals lambda: pole of the transform")
    if which == "E_alpha":
        return z ** (alpha - 1.0) / den
    if which == "E_alpha_alpha":
        return 1.0 / den
    raise ValueError(f"which must be 'E_alpha' or 'E_alpha_alpha', got {which!r}")


def _tab(f, a: int, n: int) -> Signal:
    # f(a), ..., f(a+n)
    if isinstance(f, Signal):
        return Signal(a, f.values[: n + 1])
    return Signal(a, np.array([float(f(a + j)) for j in range(n + 1)]))


def rule_checks(
    f: Callable[[int], float],
    z: float,
    nu: float = 1.0,
    tol: float = 1e-12,
    envelope: Envelope = Envelope(),
    g: Callable[[int], float] | None = None,
    g_envelope: Envelope | None = None,
    a: int = 0,
) -> list[dict]:
    """Both sides of the sum, difference and convolution rules at ``z``.

    Each entry carries ``lhs``, ``rhs``, the observed ``gap``, the ``bound``
    the gap must respect (propagated truncation and rounding bounds) and
    ``tol``. ``g`` defaults to ``f`` for the convolution rule.
    """
    z = _check_z(z)
    if g is None:
        g, g_envelope = f, envelope
    elif g_envelope is None:
        g_envelope = Envelope()

    kf = numeric_transform(f, a, z, tol, envelope)
    out = []

    def record(rule, lhs, rhs, bound):
        gap = abs(lhs - rhs)
        out.append({"rule": rule, "z": z, "lhs": lhs, "rhs": rhs, "gap": gap,
                    "bound": bound, "tol": tol, "pass": gap <= bound})

    # sum rule
    env_s = envelope.after_sum(nu)
    n, _ = horizon(z, tol, env_s)
    summed = Signal(a, left_sum_values(_tab(f, a, n).values, nu))
    ks = numeric_transform(summed, a, z, tol, env_s)
    scale = z ** (-nu)
    record(f"K(nabla^-{nu:g} f) = z^-{nu:g} K(f)", ks.value, scale * kf.value,
           ks.tail_bound + scale * kf.tail_bound)

    # difference rule
    env_d = envelope.after_nabla()
    n, _ = horizon(z, tol, env_d)
    tab = _tab(f, a, n)
    diffed = Signal(a, np.concatenate(([0.0], np.diff(tab.values))))
    kd = numeric_transform(diffed, a, z, tol, env_d)
    record("K(nabla f) = z K(f) - f(a)", kd.value, z * kf.value - tab.values[0],
           kd.tail_bound + z * kf.tail_bound)

    # convolution rule
    kg = numeric_transform(g, a, z, tol, g_envelope)
    env_c = envelope.convolved(g_envelope)
    n, _ = horizon(z, tol, env_c)
    conv = convolve(_tab(f, a, n), _tab(g, a, n))
    kc = numeric_transform(conv, a, z, tol, env_c)
    prop = abs(kf.value) * kg.tail_bound + abs(kg.value) * kf.tail_bound + kf.tail_bound * kg.tail_bound
    record("K(f * g) = K(f) K(g)", kc.value, kf.value * kg.value, kc.tail_bound + prop)
    return out
