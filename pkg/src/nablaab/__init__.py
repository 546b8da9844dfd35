"""Discrete nabla fractional calculus: fractional sums, Mittag-Leffler
kernels, Atangana-Baleanu operators, iterated AB difference-sums, the nabla
Laplace transform and a series solver."""

from types import ModuleType as _ModuleType

from nablaab._kernels import backend
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
    b_one,
    inverse_relations_check,
)
from nablaab.errors import ConvergenceError, DomainError, GridError, NablaABError
from nablaab.iterated_ab import (
    IterOrder,
    IterResult,
    integration_by_parts_check,
    iterated_kernel_form,
    iterated_left,
    iterated_right,
    laplace_symbol,
    monomial_image,
    semigroup_compose,
)
from nablaab.laplace import (
    Envelope,
    TransformPoint,
    closed_exp_monomial,
    closed_ml,
    closed_monomial,
    numeric_transform,
    rule_checks,
)
from nablaab.mittag_leffler import MLParams, MLResult, Truncation, ml_eval, ml_table
from nablaab.nabla_core import (
    Signal,
    convolve,
    delta,
    left_frac_sum,
    nabla,
    read_csv,
    right_frac_sum,
    rl_frac_diff_left,
    rl_frac_diff_right,
    write_csv,
)
from nablaab.solver import SeriesRHS, SeriesSolution, evaluate_solution, residual, solve_series
from nablaab.special_fn import dirac_delta, gen_binomial, kernel, pochhammer, rising_factorial, rising_function

__version__ = "0.1.0"

__all__ = sorted(
    name for name, obj in globals().items()
    if not name.startswith("_") and not isinstance(obj, _ModuleType)
)
