"""Scalar special functions: rising factorials and functions, the fractional
sum kernel, generalized binomials, Pochhammer symbols and the grid delta.

Every gamma ratio is a finite product. Nothing here divides two large
gammas, so the functions stay finite for grid arguments far beyond the
range where ``math.gamma`` overflows.

Each function has an ``exact_*`` twin over :class:`fractions.Fraction` used
as an independent oracle in the test-suite.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from nablaab._kernels import pairwise_product
from nablaab.errors import DomainError

__all__ = [
    "rising_factorial",
    "rising_function",
    "kernel",
    "gen_binomial",
    "dirac_delta",
    "pochhammer",
    "exact_rising_factorial",
    "exact_rising_function",
    "exact_kernel",
    "exact_gen_binomial",
    "exact_dirac_delta",
    "exact_pochhammer",
    "to_fraction",
]

# float products longer than this are reduced pairwise
_PAIRWISE_ABOVE = 64


def _product(factors: np.ndarray) -> float:
    if factors.shape[0] > _PAIRWISE_ABOVE:
        return float(pairwise_product(factors))
    return float(np.prod(factors))


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def _check_count(name: str, k: int) -> int:
    if int(k) != k or k < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {k!r}")
    return int(k)


def rising_factorial(z: float, l: int) -> float:
    """``z (z+1) ... (z+l-1)``, with the empty product equal to 1."""
    l = _check_count("l", l)
    if l == 0:
        return 1.0
    return _product(z + np.arange(l, dtype=np.float64))


def pochhammer(rho: float, k: int) -> float:
    """Rising Pochhammer symbol ``(rho)_k``."""
    return rising_factorial(rho, k)


def rising_function(z: int, mu: float) -> float:
    r"""Rising function :math:`z^{\overline{\mu}} = \Gamma(z+\mu)/\Gamma(z)`
    on the non-negative integers.

    ``0^(mu)`` is 0, except ``0^(0) = 1`` so that the identity term of every
    series survives at the origin. For ``z >= 1`` the value is computed as
    ``Gamma(mu + 1) * prod_{i=1}^{z-1} (mu + i) / (z - 1)!``.
    """
    z = _check_count("z", z)
    if z == 0:
        return 1.0 if mu == 0 else 0.0
    if _is_nonpositive_integer(z + mu):
        raise DomainError(f"Gamma(z + mu) has a pole at z={z}, mu={mu}")
    if _is_nonpositive_integer(mu + 1):
        # mu = -m: Gamma(z-m)/Gamma(z) = 1 / ((z-m) ... (z-1)), with z > m here
        m = int(-mu)
        return 1.0 / rising_factorial(z - m, m)
    head = math.gamma(mu + 1.0)
    if z == 1:
        return head
    i = np.arange(1, z, dtype=np.float64)
    return head * _product((mu + i) / i)


def kernel(n: int, nu: float) -> float:
    """Fractional-sum weight ``Gamma(n + nu - 1) / (Gamma(n) Gamma(nu))``.

    Computed as ``prod_{i=1}^{n-1} (nu + i - 1) / i``, which is entire in
    ``nu``: a nonpositive integer ``nu`` gives a finite (often zero) value
    instead of a pole.
    """
    n = _check_count("n", n)
    if n < 1:
        raise ValueError("kernel is defined for n >= 1")
    if n == 1:
        return 1.0
    i = np.arange(1, n, dtype=np.float64)
    return _product((nu + i - 1.0) / i)


def gen_binomial(mu: float, k: int) -> float:
    """Generalized binomial ``mu (mu-1) ... (mu-k+1) / k!``."""
    k = _check_count("k", k)
    if k == 0:
        return 1.0
    i = np.arange(k, dtype=np.float64)
    return _product((mu - i) / (i + 1.0))


def dirac_delta(t: int, s: int) -> float:
    """Kronecker delta on the integer grid: 1 when ``t == s``."""
    return 1.0 if t == s else 0.0


# ---------------------------------------------------------------------------
# exact rational twins


def to_fraction(x) -> Fraction:
    """Convert an int, Fraction, or decimal string to a Fraction.

    Floats are converted exactly, so ``0.1`` is *not* ``1/10``; pass a string
    or a Fraction when the decimal value is meant.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def exact_rising_factorial(z, l: int) -> Fraction:
    l = _check_count("l", l)
    z = to_fraction(z)
    out = Fraction(1)
    for i in range(l):
        out *= z + i
    return out


def exact_pochhammer(rho, k: int) -> Fraction:
    return exact_rising_factorial(rho, k)


def exact_rising_function(z: int, mu) -> Fraction:
    """Exact rising function; only rational when ``mu`` is an integer."""
    z = _check_count("z", z)
    mu = to_fraction(mu)
    if mu.denominator != 1:
        raise ValueError("exact rising function needs an integer exponent")
    if z == 0:
        return Fraction(1) if mu == 0 else Fraction(0)
    m = int(mu)
    if m >= 0:
        return exact_rising_factorial(z, m)
    if z + m <= 0:
        raise DomainError(f"Gamma(z + mu) has a pole at z={z}, mu={m}")
    return 1 / exact_rising_factorial(z + m, -m)


def exact_kernel(n: int, nu) -> Fraction:
    n = _check_count("n", n)
    if n < 1:
        raise ValueError("kernel is defined for n >= 1")
    nu = to_fraction(nu)
    out = Fraction(1)
    for i in range(1, n):
        out *= (nu + i - 1) / i
    return out


def exact_gen_binomial(mu, k: int) -> Fraction:
    k = _check_count("k", k)
    mu = to_fraction(mu)
    out = Fraction(1)
    for i in range(k):
        out *= (mu - i) / (i + 1)
    return out


def exact_dirac_delta(t: int, s: int) -> Fraction:
    return Fraction(1) if t == s else Fraction(0)
