"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both variants are imported from the same module, so one process times
both; the numba functions are warmed up once before timing.
"""

import argparse
import timeit

import numpy as np

from nablaab import _kernels as K

CASES = {
    "kernel_column(0.37, 4000)": (K.kernel_column_np, K.kernel_column_nb, (0.37, 4000)),
    "toeplitz_apply(n=2000)": (
        K.toeplitz_apply_np,
        K.toeplitz_apply_nb,
        (np.random.default_rng(0).uniform(-1, 1, 2000), np.random.default_rng(1).uniform(-1, 1, 2000)),
    ),
    "ml_series(0.4, -0.5, v_max=200)": (
        K.ml_series_np,
        K.ml_series_nb,
        (0.4, 1.0, 1.0, -0.5, 200, 1e-12, 2, 10_000),
    ),
}


def best(fn, args, repeat):
    fn(*args)
    loops, _ = timeit.Timer(lambda: fn(*args)).autorange()
    return min(timeit.repeat(lambda: fn(*args), number=loops, repeat=repeat)) / loops


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'case':36} {'numpy':>12} {'numba':>12} {'speedup':>8}")
    for name, (np_fn, nb_fn, fargs) in CASES.items():
        t_np, t_nb = best(np_fn, fargs, args.repeat), best(nb_fn, fargs, args.repeat)
        print(f"{name:36} {t_np * 1e3:10.3f}ms {t_nb * 1e3:10.3f}ms {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
