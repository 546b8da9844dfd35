"""Rational-arithmetic reference implementations.

Grid functions are plain lists of :class:`~fractions.Fraction` with index 0
at the base point, and every operator follows the same base-point slot
conventions as the float code. For rational orders each kernel weight is a
finite product of rationals, so these results are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from nablaab.special_fn import exact_gen_binomial, exact_kernel, to_fraction

__all__ = [
    "as_fractions",
    "exact_left_sum",
    "exact_right_sum",
    "exact_ab_sum_left",
    "exact_ab_sum_right",
    "exact_iterated_left",
    "exact_iterated_right",
    "exact_power_image",
    "vandermonde_gap",
]

Grid = list[Fraction]


def as_fractions(values: Sequence) -> Grid:
    return [to_fraction(v) for v in values]


def _weights(mu: Fraction, count: int) -> Grid:
    return [exact_kernel(n, mu) for n in range(1, count + 1)]


def exact_left_sum(values: Sequence, mu) -> Grid:
    """``sum_{s=a+1}^t kernel(t-s+1, mu) f(s)``; slot 0 is 0 unless ``mu == 0``."""
    f = as_fractions(values)
    mu = to_fraction(mu)
    if mu == 0:
        return list(f)
    w = _weights(mu, len(f))
    out = [Fraction(0)] * len(f)
    for j in range(1, len(f)):
        out[j] = sum((w[j - i] * f[i] for i in range(1, j + 1)), Fraction(0))
    return out


def exact_right_sum(values: Sequence, mu) -> Grid:
    f = as_fractions(values)
    return exact_left_sum(f[::-1], mu)[::-1]


def _ab_sum(values, alpha, B, sum_fn) -> Grid:
    f = as_fractions(values)
    alpha, B = to_fraction(alpha), to_fraction(B)
    s = sum_fn(f, alpha)
    return [((1 - alpha) * x + alpha * y) / B for x, y in zip(f, s)]


def exact_ab_sum_left(values: Sequence, alpha, B=1) -> Grid:
    return _ab_sum(values, alpha, B, exact_left_sum)


def exact_ab_sum_right(values: Sequence, alpha, B=1) -> Grid:
    return _ab_sum(values, alpha, B, exact_right_sum)


def _iterated(values, alpha, n: int, B, sum_fn) -> Grid:
    if int(n) != n or n < 0:
        raise ValueError("the exact iterated operator needs a non-negative integer order")
    f = as_fractions(values)
    alpha, B = to_fraction(alpha), to_fraction(B)
    out = [Fraction(0)] * len(f)
    for k in range(int(n) + 1):
        c = exact_gen_binomial(n, k) * (1 - alpha) ** (n - k) * alpha**k / B**n
        for j, y in enumerate(sum_fn(f, k * alpha)):
            out[j] += c * y
    return out


def exact_iterated_left(values: Sequence, alpha, n: int, B=1) -> Grid:
    """Finite binomial form of the order ``(alpha, n)`` left operator."""
    return _iterated(values, alpha, n, B, exact_left_sum)


def exact_iterated_right(values: Sequence, alpha, n: int, B=1) -> Grid:
    return _iterated(values, alpha, n, B, exact_right_sum)


def exact_power_image(nu, beta: int, t_minus_a: int) -> Fraction:
    """Closed form of the order-``nu`` sum of ``(t-a)^(beta)`` for a
    non-negative integer ``beta``: ``beta! * kernel(t-a, beta+nu+1)``."""
    fact = Fraction(1)
    for i in range(2, beta + 1):
        fact *= i
    return fact * exact_kernel(t_minus_a, to_fraction(nu) + beta + 1)


def vandermonde_gap(mu, nu, n: int) -> Fraction:
    """``sum_k binom(mu,k) binom(nu,n-k) - binom(mu+nu,n)``; zero for all inputs."""
    mu, nu = to_fraction(mu), to_fraction(nu)
    lhs = sum(
        (exact_gen_binomial(mu, k) * exact_gen_binomial(nu, n - k) for k in range(n + 1)),
        Fraction(0),
    )
    return lhs - exact_gen_binomial(mu + nu, n)
