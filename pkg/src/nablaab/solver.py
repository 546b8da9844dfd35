r"""Power-series solutions of :math:`\nabla^{(-\alpha,-\mu)} x = -A x + b`.

Both sides are expanded in rising powers :math:`t^{\overline{\alpha s}}`
(origin ``a = 0``). The power rule turns every fractional sum of a rising
power into another rising power, so matching coefficients gives a
triangular recursion for the ``c_m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from nablaab.ab_ops import ABConfig
from nablaab.errors import DomainError
from nablaab.iterated_ab import IterOrder, iterated_left
from nablaab.mittag_leffler import DEFAULT_TRUNCATION, Truncation
from nablaab.nabla_core import Signal
from nablaab.special_fn import gen_binomial, rising_function

__all__ = [
    "SeriesRHS",
    "SeriesSolution",
    "SolutionPoint",
    "solve_series",
    "evaluate_solution",
    "solution_point",
    "tabulate",
    "residual",
    "recursion_check",
]


def _as_coeffs(values) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(values, dtype=np.float64)).copy()
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError("coefficients must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(arr)):
        raise DomainError("coefficients must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SeriesRHS:
    """``b(t) = sum_s b_s t^(alpha s)``."""

    coefficients: np.ndarray
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _as_coeffs(self.coefficients))

    def coefficient(self, s: int) -> float:
        return float(self.coefficients[s]) if s < self.coefficients.size else 0.0

    def __call__(self, t: int) -> float:
        return math.fsum(
            b * rising_function(int(t), self.alpha * s) for s, b in enumerate(self.coefficients)
        )


@dataclass(frozen=True)
class SeriesSolution:
    coefficients: np.ndarray
    alpha: float
    mu: float
    A: float

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _as_coeffs(self.coefficients))

    @property
    def n_terms(self) -> int:
        return int(self.coefficients.size)


class SolutionPoint(NamedTuple):
    value: float
    last_term: float
    trusted: bool


def _recursion_weights(alpha: float, mu: float, B: float, m_max: int) -> np.ndarray:
    # binom(-mu,k) B^mu alpha^k / (1-alpha)^(mu+k)
    return np.array([
        gen_binomial(-mu, k) * B**mu * alpha**k / (1.0 - alpha) ** (mu + k)
        for k in range(m_max + 1)
    ])


def solve_series(
    alpha: float,
    mu: float,
    A: float,
    rhs: SeriesRHS,
    cfg: ABConfig | None = None,
    n_terms: int = 25,
) -> SeriesSolution:
    """Coefficients ``c_0, ..., c_{n_terms-1}`` of the series solution.

    ``cfg`` supplies ``B(alpha)`` (``B = 1`` when omitted).
    """
    if not 0.0 < alpha < 1.0:
        # alpha = 1 makes (1-alpha)^-mu blow up
        raise DomainError(f"alpha must lie in (0, 1) for the series solver, got {alpha}")
    if not mu > 0:
        raise DomainError(f"mu must be positive, got {mu}")
    if not A > 0:
        raise DomainError(f"A must be positive, got {A}")
    if n_terms < 1:
        raise DomainError("n_terms must be at least 1")
    if rhs.alpha != alpha:
        raise DomainError(f"right-hand side uses alpha={rhs.alpha}, equation uses {alpha}")
    B = 1.0 if cfg is None else cfg.B
    if cfg is not None and cfg.alpha != alpha:
        raise DomainError(f"config alpha {cfg.alpha} does not match {alpha}")

    den = A + (B / (1.0 - alpha)) ** mu
    if den == 0.0:
        raise ZeroDivisionError("A + (B/(1-alpha))^mu vanishes")
    w = _recursion_weights(alpha, mu, B, n_terms)
    g = np.array([math.gamma(s * alpha + 1.0) for s in range(n_terms)])
    c = np.zeros(n_terms)
    for m in range(n_terms):
        acc = math.fsum(c[m - k] * w[k] * g[m - k] for k in range(1, m + 1))
        c[m] = (rhs.coefficient(m) - acc / g[m]) / den
    return SeriesSolution(c, alpha, mu, A)


def solution_point(sol: SeriesSolution, t: int, tol: float = 1e-12) -> SolutionPoint:
    """Value of the truncated series at ``t`` together with the size of its
    last term; ``trusted`` marks points where that term is below ``tol``
    times the partial sum."""
    if int(t) != t or t < 0:
        raise DomainError(f"t must be a non-negative integer, got {t}")
    terms = [c * rising_function(int(t), sol.alpha * s) for s, c in enumerate(sol.coefficients)]
    value = math.fsum(terms)
    last = abs(terms[-1])
    return SolutionPoint(value, last, last <= tol * abs(value) or last == 0.0)


def evaluate_solution(sol: SeriesSolution, t: int) -> float:
    return solution_point(sol, t).value


def tabulate(sol: SeriesSolution, t_max: int) -> Signal:
    """Solution on the grid ``0, ..., t_max``."""
    return Signal(0, np.array([evaluate_solution(sol, t) for t in range(t_max + 1)]))


def residual(
    sol: SeriesSolution,
    rhs: SeriesRHS,
    A: float | None = None,
    cfg: ABConfig | None = None,
    t_max: int = 6,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> float:
    """``max |nabla^{(-alpha,-mu)} x + A x - b|`` over ``t = 1, ..., t_max``."""
    A = sol.A if A is None else A
    x = tabulate(sol, t_max)
    lhs = iterated_left(x, IterOrder(sol.alpha, -sol.mu), cfg, trunc).values.values
    b = np.array([rhs(t) for t in range(t_max + 1)])
    gap = lhs + A * x.values - b
    return float(np.max(np.abs(gap[1:])))


def recursion_check(
    sol: SeriesSolution,
    rhs: SeriesRHS,
    cfg: ABConfig | None = None,
    m_max: int = 10,
) -> float:
    """Largest relative mismatch, over ``m <= m_max``, between the
    coefficient of ``t^(alpha m)`` in the operator image of the series and
    ``-A c_m + b_m``."""
    al, mu = sol.alpha, sol.mu
    B = 1.0 if cfg is None else cfg.B
    m_max = min(m_max, sol.n_terms - 1)
    w = _recursion_weights(al, mu, B, m_max)
    c = sol.coefficients
    worst = 0.0
    for m in range(m_max + 1):
        lhs = math.fsum(
            c[m - k] * w[k] * math.gamma((m - k) * al + 1.0) for k in range(m + 1)
        ) / math.gamma(m * al + 1.0)
        rhs_m = -sol.A * c[m] + rhs.coefficient(m)
        worst = max(worst, abs(lhs - rhs_m) / max(abs(rhs_m), abs(lhs), 1e-300))
    return worst
