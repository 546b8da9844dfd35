import numpy as np
import pytest

from nablaab import DomainError
from nablaab.mittag_leffler import (
    MLParams,
    Truncation,
    ml_eval,
    ml_forward_identities,
    ml_table,
    ml_table_full,
)

from conftest import mp_ml


def test_examples():
    assert ml_eval(MLParams(0.5, 0.3), 0).value == 1.0
    np.testing.assert_array_equal(ml_table(MLParams(0.7, 0.0), 10), np.ones(11))
    assert ml_eval(MLParams(0.5, 0.3, beta=2.0), 0).value == 0.0


@pytest.mark.parametrize("lam", [-0.7, -0.3, 0.5, 0.7])
def test_alpha_one_closed_form(lam):
    tab = ml_table(MLParams(1.0, lam), 30)
    ref = (1 - lam) ** -np.arange(31.0)
    np.testing.assert_allclose(tab, ref, rtol=1e-10)


@pytest.mark.parametrize(
    "alpha, lam, beta, rho",
    [(0.3, -3 / 7, 1.0, 1.0), (0.5, 0.4, 1.5, 1.0), (0.7, -0.6, 2.0, 2.5), (0.45, -0.45 / 0.55, 1.0, 1.0)],
)
def test_vs_independent_mpmath_series(alpha, lam, beta, rho):
    p = MLParams(alpha, lam, beta, rho)
    tab = ml_table(p, 24)
    for v in (1, 2, 7, 24):
        assert tab[v] == pytest.approx(mp_ml(alpha, lam, beta, rho, v), rel=1e-11, abs=1e-14)


def test_cancellation_triggers_extended_precision():
    res = ml_eval(MLParams(1.0, -0.7), 30)
    assert res.extended
    assert res.value == pytest.approx(1.7**-30, rel=1e-12)
    assert not ml_eval(MLParams(0.3, 0.2), 5).extended


def test_tail_bound_covers_remainder():
    p = MLParams(0.6, 0.8)
    loose = ml_eval(p, 25, Truncation(tol=1e-6))
    tight = ml_eval(p, 25, Truncation(tol=1e-15))
    assert abs(loose.value - tight.value) <= loose.tail_bound + 1e-14 * abs(tight.value)
    assert loose.terms < tight.terms


def test_table_full_metadata():
    t = ml_table_full(MLParams(0.4, -0.5), 12)
    assert t.values.shape == t.terms.shape == t.tail_bounds.shape == (13,)
    assert np.all(t.tail_bounds >= 0)
    # a caller mutating the table must not poison the cache
    t.values[3] = 99.0
    assert ml_table(MLParams(0.4, -0.5), 12)[3] != 99.0


@pytest.mark.parametrize("bad", [dict(alpha=0.0, lam=0.1), dict(alpha=0.5, lam=1.0), dict(alpha=0.5, lam=-1.2)])
def test_parameter_validation(bad):
    with pytest.raises(DomainError):
        MLParams(**bad)


def test_bad_v_rejected():
    with pytest.raises(DomainError):
        ml_eval(MLParams(0.5, 0.1), -1)
    with pytest.raises(DomainError):
        ml_eval(MLParams(0.5, 0.1), 2.5)


def test_non_convergence_raises():
    from nablaab import ConvergenceError

    with pytest.raises(ConvergenceError):
        ml_eval(MLParams(0.5, 0.95), 40, Truncation(k_max=20))


@pytest.mark.parametrize("params", [MLParams(0.3, -0.5), MLParams(0.5, 0.4, 1.5), MLParams(0.7, -0.3, 2.0, 2.0)])
def test_forward_identities(params):
    for v in range(1, 21):
        for r in ml_forward_identities(params, v, gamma=0.6):
            if r["lhs"] is None:
                continue
            assert r["gap"] <= 1e-10 * max(1.0, abs(r["rhs"])), r


def test_lowering_identity_skipped_at_v1_for_beta_one():
    rows = ml_forward_identities(MLParams(0.5, 0.3), 1)
    skipped = [r for r in rows if r["lhs"] is None]
    assert len(skipped) == 1 and skipped[0]["identity"].startswith("nabla E^r_ab")
