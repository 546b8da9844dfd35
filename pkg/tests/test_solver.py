import math

import numpy as np
import pytest

from nablaab import DomainError
from nablaab.ab_ops import ABConfig, abr_left
from nablaab.solver import (
    SeriesRHS,
    evaluate_solution,
    recursion_check,
    residual,
    solution_point,
    solve_series,
    tabulate,
)


def test_c0_and_c1():
    sol = solve_series(0.3, 1.0, 1.0, SeriesRHS([1.0], 0.3), n_terms=25)
    den = 1 + 1 / 0.7
    assert sol.coefficients[0] == pytest.approx(0.7 / 1.7, abs=1e-15)
    c1 = sol.coefficients[0] * 0.3 / (0.7**2 * math.gamma(1.3)) / den
    assert sol.coefficients[1] == pytest.approx(c1, rel=1e-14)
    assert sol.n_terms == 25


def test_zero_rhs_gives_zero():
    sol = solve_series(0.3, 1.4, 2.0, SeriesRHS([0.0, 0.0], 0.3), n_terms=10)
    assert not np.any(sol.coefficients)
    assert all(evaluate_solution(sol, t) == 0.0 for t in range(5))


def test_value_at_origin_is_c0():
    sol = solve_series(0.3, 1.0, 1.0, SeriesRHS([1.0], 0.3), n_terms=25)
    assert evaluate_solution(sol, 0) == sol.coefficients[0]


def test_direct_series_evaluation():
    sol = solve_series(0.3, 1.0, 1.0, SeriesRHS([1.0], 0.3), n_terms=25)
    for t in (1, 2, 3):
        ref = math.fsum(c * math.gamma(t + 0.3 * s) / math.gamma(t) for s, c in enumerate(sol.coefficients))
        assert evaluate_solution(sol, t) == pytest.approx(ref, rel=1e-13)


def test_residuals():
    rhs = SeriesRHS([1.0], 0.3)
    assert residual(solve_series(0.3, 1.0, 1.0, rhs, n_terms=25), rhs, t_max=6) <= 1e-6
    rhs2 = SeriesRHS([1.0, 0.5], 0.25)
    assert residual(solve_series(0.25, 1.5, 2.0, rhs2, n_terms=30), rhs2, t_max=5) <= 1e-5


def test_mu_one_matches_abr_equation():
    sol = solve_series(0.3, 1.0, 1.0, SeriesRHS([1.0], 0.3), n_terms=25)
    x = tabulate(sol, 6)
    lhs = abr_left(x, ABConfig(0.3)).values
    assert np.max(np.abs(lhs[1:] + x.values[1:] - 1.0)) <= 1e-6


def test_normalization_is_honoured():
    cfg = ABConfig.named(0.3, "ab-standard")
    rhs = SeriesRHS([1.0, -0.4], 0.3)
    sol = solve_series(0.3, 1.2, 1.5, rhs, cfg, 25)
    assert residual(sol, rhs, cfg=cfg, t_max=6) <= 1e-6
    assert recursion_check(sol, rhs, cfg) <= 1e-10


def test_recursion_identity():
    rhs = SeriesRHS([1.0, 0.5], 0.25)
    assert recursion_check(solve_series(0.25, 1.5, 2.0, rhs, n_terms=30), rhs) <= 1e-10


def test_residual_shrinks():
    rhs = SeriesRHS([1.0], 0.3)
    res = [residual(solve_series(0.3, 1.0, 1.0, rhs, n_terms=n), rhs) for n in (5, 10, 15, 20)]
    assert res == sorted(res, reverse=True)


def test_linearity():
    a = solve_series(0.3, 1.2, 1.0, SeriesRHS([1.0, 2.0], 0.3), n_terms=10).coefficients
    b = solve_series(0.3, 1.2, 1.0, SeriesRHS([0.0, 1.0, -1.0], 0.3), n_terms=10).coefficients
    ab = solve_series(0.3, 1.2, 1.0, SeriesRHS([3.0, 7.0, -1.0], 0.3), n_terms=10).coefficients
    np.testing.assert_allclose(ab, 3 * a + b, rtol=1e-13, atol=1e-16)


def test_solution_point_trust_flag():
    sol = solve_series(0.3, 1.0, 1.0, SeriesRHS([1.0], 0.3), n_terms=25)
    assert solution_point(sol, 1).trusted
    short = solve_series(0.3, 1.0, 1.0, SeriesRHS([1.0], 0.3), n_terms=8)
    assert not solution_point(short, 1).trusted


@pytest.mark.parametrize("kwargs", [
    dict(alpha=0.3, mu=-1.0, A=1.0),
    dict(alpha=0.3, mu=0.0, A=1.0),
    dict(alpha=0.0, mu=1.0, A=1.0),
    dict(alpha=0.3, mu=1.0, A=0.0),
])
def test_rejects_bad_parameters(kwargs):
    with pytest.raises(DomainError):
        solve_series(rhs=SeriesRHS([1.0], kwargs["alpha"]), n_terms=5, **kwargs)


def test_rhs_alpha_must_match():
    with pytest.raises(DomainError):
        solve_series(0.3, 1.0, 1.0, SeriesRHS([1.0], 0.2), n_terms=5)


def test_rhs_evaluation():
    rhs = SeriesRHS([1.0, 2.0], 0.5)
    assert rhs(0) == 1.0
    assert rhs(1) == pytest.approx(1 + 2 * math.gamma(1.5))
