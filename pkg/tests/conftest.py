import mpmath
import numpy as np
import pytest

from nablaab import Signal


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_signal(rng):
    def make(n, a=0):
        return Signal(a, rng.uniform(-1.0, 1.0, n))

    return make


def mp_kernel(n, nu, dps=40):
    """Gamma(n+nu-1) / (Gamma(n) Gamma(nu)) straight from mpmath gammas."""
    with mpmath.workdps(dps):
        return mpmath.gammaprod([n + mpmath.mpf(nu) - 1], [n, mpmath.mpf(nu)])


def brute_left_sum(x, mu):
    """Direct double loop over s with mpmath weights."""
    out = np.zeros(len(x))
    for j in range(1, len(x)):
        out[j] = float(mpmath.fsum(mp_kernel(j - i + 1, mu) * x[i] for i in range(1, j + 1)))
    return out


def brute_right_sum(x, mu):
    n = len(x)
    out = np.zeros(n)
    for j in range(n - 1):
        out[j] = float(mpmath.fsum(mp_kernel(i - j + 1, mu) * x[i] for i in range(j, n - 1)))
    return out


def mp_ml(alpha, lam, beta, rho, v, dps=60, terms=3000):
    """Independent series: rising powers from mpmath gammas, fixed long cut."""
    if v == 0:
        return 1.0 if beta == 1 else 0.0
    with mpmath.workdps(dps):
        a, lam_, b, r = (mpmath.mpf(x) for x in (alpha, lam, beta, rho))
        s = mpmath.mpf(0)
        for k in range(terms):
            nu = k * a + b
            term = mpmath.rf(r, k) * lam_**k / mpmath.factorial(k) * mpmath.rf(nu, v - 1) / mpmath.factorial(v - 1)
            s += term
            if k > 50 and abs(term) < mpmath.mpf(10) ** (-dps + 5) * abs(s):
                break
        return float(s)
