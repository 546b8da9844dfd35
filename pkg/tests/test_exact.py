from fractions import Fraction

import numpy as np
import pytest

from nablaab import Signal
from nablaab.ab_ops import ABConfig, ab_sum_left
from nablaab.exact import (
    as_fractions,
    exact_ab_sum_left,
    exact_ab_sum_right,
    exact_iterated_left,
    exact_iterated_right,
    exact_left_sum,
    exact_power_image,
    exact_right_sum,
    vandermonde_gap,
)
from nablaab.iterated_ab import IterOrder, iterated_left
from nablaab.special_fn import exact_rising_function

QUARTERS = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]


@pytest.fixture
def frac_signal():
    rng = np.random.default_rng(11)
    return [Fraction(int(p), int(q)) for p, q in zip(rng.integers(-9, 10, 16), rng.integers(1, 6, 16))]


@pytest.mark.parametrize("a", QUARTERS)
@pytest.mark.parametrize("m", QUARTERS)
def test_classical_semigroup_exact(frac_signal, a, m):
    assert exact_left_sum(exact_left_sum(frac_signal, a), m) == exact_left_sum(frac_signal, a + m)
    assert exact_right_sum(exact_right_sum(frac_signal, a), m) == exact_right_sum(frac_signal, a + m)


def test_order_one_is_running_sum(frac_signal):
    out = exact_left_sum(frac_signal, 1)
    assert out[-1] == sum(frac_signal[1:])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_iterated_integer_order_is_repeated_ab_sum(frac_signal, n):
    a = Fraction(1, 4)
    left, right = frac_signal, frac_signal
    for _ in range(n):
        left, right = exact_ab_sum_left(left, a), exact_ab_sum_right(right, a)
    assert exact_iterated_left(frac_signal, a, n) == left
    assert exact_iterated_right(frac_signal, a, n) == right


def test_iterated_integer_semigroup_exact(frac_signal):
    a = Fraction(1, 3)
    f = frac_signal[:8]
    for m in range(3):
        for k in range(3):
            assert exact_iterated_left(exact_iterated_left(f, a, k), a, m) == exact_iterated_left(f, a, m + k)


def test_power_rule_exact():
    nu = Fraction(1, 2)
    f = [exact_rising_function(t, 2) for t in range(10)]
    out = exact_left_sum(f, nu)
    assert all(out[t] == exact_power_image(nu, 2, t) for t in range(1, 10))


@pytest.mark.parametrize("mu, nu", [("1/3", "-5/2"), ("3/4", "1/4"), ("-1/2", "-3/2")])
def test_vandermonde(mu, nu):
    assert all(vandermonde_gap(mu, nu, m) == 0 for m in range(13))


def test_float_code_matches_exact(frac_signal):
    x = np.array([float(v) for v in frac_signal])
    f = Signal(0, x)
    ref = [float(v) for v in exact_iterated_left(frac_signal, Fraction(1, 4), 2)]
    np.testing.assert_allclose(iterated_left(f, IterOrder(0.25, 2)).values.values, ref, rtol=1e-13, atol=1e-14)
    ref = [float(v) for v in exact_ab_sum_left(frac_signal, Fraction(1, 4))]
    np.testing.assert_allclose(ab_sum_left(f, ABConfig(0.25)).values, ref, rtol=1e-14, atol=1e-15)


def test_exact_rejects_fractional_iteration():
    with pytest.raises(ValueError):
        exact_iterated_left(as_fractions([1, 2, 3]), Fraction(1, 4), Fraction(1, 2))
