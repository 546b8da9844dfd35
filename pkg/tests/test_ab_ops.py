import numpy as np
import pytest

from nablaab import DomainError, GridError, Signal
from nablaab.ab_ops import (
    ABConfig,
    ab_sum_left,
    ab_sum_right,
    abc_left,
    abc_right,
    abr_left,
    abr_right,
    abr_series,
    abr_series_right,
    b_ab_standard,
    inverse_relations_check,
)

from conftest import brute_left_sum, mp_ml


def brute_abr_left(x, alpha, B=1.0):
    """Definition with mpmath kernel values: scale * nabla of the inner sum."""
    lam = -alpha / (1 - alpha)
    n = len(x)
    e = [0.0] + [mp_ml(alpha, lam, 1.0, 1.0, v) for v in range(1, n)]
    inner = np.zeros(n)
    for t in range(1, n):
        inner[t] = sum(x[s] * e[t - s + 1] for s in range(1, t + 1))
    out = np.empty(n)
    out[0] = x[0]
    out[1:] = np.diff(inner)
    return B / (1 - alpha) * out


def brute_abc_left(x, alpha, B=1.0):
    lam = -alpha / (1 - alpha)
    n = len(x)
    e = [0.0] + [mp_ml(alpha, lam, 1.0, 1.0, v) for v in range(1, n)]
    out = np.zeros(n)
    for t in range(1, n):
        out[t] = sum((x[s] - x[s - 1]) * e[t - s + 1] for s in range(1, t + 1))
    return B / (1 - alpha) * out


def test_config():
    cfg = ABConfig(0.3)
    assert cfg.B == 1.0
    assert cfg.lam == pytest.approx(-3 / 7)
    assert cfg.scale == pytest.approx(1 / 0.7)
    assert ABConfig.named(0.3, "ab-standard").B == pytest.approx(b_ab_standard(0.3))
    assert b_ab_standard(0.0) == 1.0 and b_ab_standard(1.0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ABConfig.named(0.3, "nope")
    with pytest.raises(DomainError):
        ABConfig(1.2)


def test_ab_sum_example():
    one = Signal.constant(1.0, 0, 2)
    assert ab_sum_left(one, ABConfig(0.5), 2) == pytest.approx(1.25)
    assert ab_sum_left(one, ABConfig(0.5), 1) == pytest.approx(1.0)
    assert ab_sum_right(one, ABConfig(0.5), 0) == pytest.approx(1.25)


def test_ab_sum_accepts_alpha_above_half():
    f = Signal.constant(1.0, 0, 4)
    assert ab_sum_left(f, ABConfig(0.8), 4) > 0
    with pytest.raises(DomainError):
        abr_left(f, ABConfig(0.5))


@pytest.mark.parametrize("alpha", [0.1, 0.3, 0.45])
def test_abr_abc_vs_definition(random_signal, alpha):
    f = random_signal(14)
    cfg = ABConfig(alpha)
    np.testing.assert_allclose(abr_left(f, cfg).values, brute_abr_left(f.values, alpha), atol=1e-11)
    np.testing.assert_allclose(abc_left(f, cfg).values, brute_abc_left(f.values, alpha), atol=1e-11)


@pytest.mark.parametrize("alpha", [0.2, 0.4])
def test_right_operators_mirror_left(random_signal, alpha):
    f = random_signal(12)
    r = Signal(0, f.values[::-1])
    cfg = ABConfig.named(alpha, "ab-standard")
    np.testing.assert_allclose(abr_right(f, cfg).values, abr_left(r, cfg).values[::-1], atol=1e-13)
    np.testing.assert_allclose(abc_right(f, cfg).values, abc_left(r, cfg).values[::-1], atol=1e-13)
    np.testing.assert_allclose(ab_sum_right(f, cfg).values, ab_sum_left(r, cfg).values[::-1], atol=1e-14)


def test_ab_sum_vs_brute(random_signal):
    f = random_signal(15)
    cfg = ABConfig(0.35)
    ref = 0.65 * f.values + 0.35 * brute_left_sum(f.values, 0.35)
    np.testing.assert_allclose(ab_sum_left(f, cfg).values[1:], ref[1:], atol=1e-13)


@pytest.mark.parametrize("alpha", [0.1, 0.3, 0.45])
def test_series_form(random_signal, alpha):
    cfg = ABConfig(alpha)
    for _ in range(5):
        f = random_signal(16)
        np.testing.assert_allclose(abr_series(f, cfg).values, abr_left(f, cfg).values, atol=1e-9)
        np.testing.assert_allclose(abr_series_right(f, cfg).values, abr_right(f, cfg).values, atol=1e-9)


@pytest.mark.parametrize("norm", ["one", "ab-standard"])
@pytest.mark.parametrize("alpha", [0.1, 0.2, 0.3, 0.45])
def test_inverse_relations(random_signal, alpha, norm):
    gaps = inverse_relations_check(random_signal(32), ABConfig.named(alpha, norm))
    assert len(gaps) == 6
    assert max(gaps.values()) <= 1e-8, gaps


def test_inverse_relations_hold_on_full_grid(random_signal):
    gaps = inverse_relations_check(random_signal(20), ABConfig(0.3), interior_only=False)
    assert max(gaps.values()) <= 1e-10


def test_alpha_zero_is_scaled_identity(random_signal):
    f = random_signal(8)
    np.testing.assert_allclose(abr_left(f, ABConfig(0.0)).values, f.values, atol=1e-15)
    np.testing.assert_allclose(ab_sum_left(f, ABConfig(0.0)).values, f.values, atol=1e-15)


def test_point_evaluation_ranges(random_signal):
    f = random_signal(6)
    cfg = ABConfig(0.2)
    assert abr_left(f, cfg, 3) == pytest.approx(abr_left(f, cfg).values[3])
    with pytest.raises(GridError):
        abc_left(f, cfg, 0)
    with pytest.raises(GridError):
        abc_right(f, cfg, 5)


def test_linearity(random_signal):
    f, g = random_signal(10), random_signal(10)
    cfg = ABConfig(0.25)
    lhs = abr_left(Signal(0, 2 * f.values - g.values), cfg).values
    rhs = 2 * abr_left(f, cfg).values - abr_left(g, cfg).values
    np.testing.assert_allclose(lhs, rhs, atol=1e-13)

