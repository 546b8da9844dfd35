"""Compiled and pure-numpy kernel paths must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest

from nablaab import _kernels

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


@needs_numba
@pytest.mark.parametrize("nu", [0.0, 0.3, 1.0, 2.7, -1.5])
def test_kernel_column_paths_agree(nu):
    np.testing.assert_allclose(
        _kernels.kernel_column_nb(nu, 200), _kernels.kernel_column_np(nu, 200), rtol=1e-14, atol=0
    )


@needs_numba
@pytest.mark.parametrize("n", [1, 5, 64, 65, 300])
def test_toeplitz_paths_agree(n):
    rng = np.random.default_rng(n)
    w, f = rng.uniform(-1, 1, (2, n))
    ref = np.array([sum(w[j - i] * f[i] for i in range(j + 1)) for j in range(n)])
    np.testing.assert_allclose(_kernels.toeplitz_apply_nb(w, f), ref, rtol=0, atol=1e-13)
    np.testing.assert_allclose(_kernels.toeplitz_apply_np(w, f), ref, rtol=0, atol=1e-13)


@needs_numba
@pytest.mark.parametrize("alpha, lam", [(0.3, -3 / 7), (0.5, 0.4), (1.0, -0.7), (0.9, 0.2)])
def test_ml_series_paths_agree(alpha, lam):
    args = (alpha, 1.0, 1.0, lam, 25, 1e-12, 8, 10_000)
    nb = _kernels.ml_series_nb(*args)
    np_ = _kernels.ml_series_np(*args)
    # raw sums may cancel badly; they must agree to within the rounding
    # allowance that triggers the extended-precision fallback
    v = np.arange(26)
    allowance = 4 * (2 + np.sqrt(v)) * np.finfo(float).eps * nb[3] + 1e-12 * np.abs(nb[0])
    assert np.all(np.abs(nb[0] - np_[0]) <= allowance)
    np.testing.assert_allclose(nb[3], np_[3], rtol=1e-12)


def test_backend_reports_flag():
    assert _kernels.backend() in ("numba", "numpy")
    assert (_kernels.backend() == "numba") == _kernels.USE_NUMBA


def test_compensated_sum_on_long_input():
    n = 500
    w = np.ones(n)
    f = np.full(n, 0.1)
    f[0] = 1e16
    f[1] = -1e16
    out = _kernels.toeplitz_apply(w, f)
    assert out[-1] == pytest.approx(0.1 * (n - 2), rel=1e-14)


def test_disable_flag_selects_numpy():
    code = "from nablaab import backend; print(backend())"
    env = {**os.environ, "NABLAAB_DISABLE_NUMBA": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
