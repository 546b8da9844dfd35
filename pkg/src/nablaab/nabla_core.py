"""Grid signals and the classical nabla operators.

A :class:`Signal` is a real function tabulated on ``{a, a+1, ..., b}``.
Left operators read ``f(a+1), ..., f(t)`` and right operators read
``f(t), ..., f(b-1)``, exactly as in the defining sums; ``f(a)`` and ``f(b)``
are only used by Caputo-type corrections and the backward difference.

Grid-valued results of left operators live on the same grid as their
input. The slot at ``t = a`` holds the value of the series representation
there (``f(a)`` for the order-zero identity term, ``0`` for every sum of
positive order), which is what makes compositions and the base-point
conventions of the AB operators consistent. Right operators mirror this at
``t = b``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from nablaab import _kernels
from nablaab.errors import GridError

__all__ = [
    "Signal",
    "nabla",
    "delta",
    "left_frac_sum",
    "right_frac_sum",
    "left_sum_values",
    "right_sum_values",
    "rl_frac_diff_left",
    "rl_frac_diff_right",
    "convolve",
    "read_csv",
    "write_csv",
]


@dataclass(frozen=True)
class Signal:
    """Values of a real function on the integer grid ``{a, ..., b}``."""

    a: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if int(self.a) != self.a:
            raise GridError(f"origin must be an integer, got {self.a!r}")
        vals = np.array(self.values, dtype=np.float64)
        if vals.ndim != 1 or vals.shape[0] == 0:
            raise GridError("a signal needs a non-empty 1-d array of values")
        if not np.all(np.isfinite(vals)):
            raise GridError("signal values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, fn: Callable, a: int, b: int) -> Signal:
        t = np.arange(a, b + 1)
        return cls(a, np.array([fn(int(s)) for s in t], dtype=np.float64))

    @classmethod
    def constant(cls, c: float, a: int, b: int) -> Signal:
        return cls(a, np.full(b - a + 1, float(c)))

    @property
    def b(self) -> int:
        return self.a + self.values.shape[0] - 1

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.a, self.b + 1)

    def __len__(self) -> int:
        return self.values.shape[0]

    def __call__(self, t: int) -> float:
        if not self.a <= t <= self.b:
            raise GridError(f"t={t} is outside the grid [{self.a}, {self.b}]")
        return float(self.values[t - self.a])

    def with_values(self, values) -> Signal:
        return Signal(self.a, values)

    def __repr__(self) -> str:
        return f"Signal(a={self.a}, b={self.b})"


def _check_point(f: Signal, t: int, lo: int, hi: int) -> int:
    if int(t) != t or not lo <= t <= hi:
        raise GridError(f"t={t} is outside the admissible range [{lo}, {hi}]")
    return int(t) - f.a


def _check_order(mu: float) -> float:
    mu = float(mu)
    if not math.isfinite(mu) or mu < 0:
        raise ValueError(f"fractional order must be >= 0, got {mu}")
    return mu


def nabla(f: Signal) -> Signal:
    """Backward difference ``f(t) - f(t-1)`` on ``{a+1, ..., b}``."""
    if len(f) < 2:
        raise GridError("the backward difference needs at least two points")
    return Signal(f.a + 1, np.diff(f.values))


def delta(f: Signal) -> Signal:
    """Forward difference ``f(t+1) - f(t)`` on ``{a, ..., b-1}``."""
    if len(f) < 2:
        raise GridError("the forward difference needs at least two points")
    return Signal(f.a, np.diff(f.values))


def left_sum_values(values: np.ndarray, mu: float) -> np.ndarray:
    """Left fractional sum of order ``mu`` over a full grid array.

    ``values[0]`` is ``f(a)``; the result has the same length, with slot 0
    holding ``f(a)`` when ``mu == 0`` and 0 otherwise.
    """
    values = np.asarray(values, dtype=np.float64)
    if mu == 0:
        return values.copy()
    n = values.shape[0]
    out = np.zeros(n)
    if n > 1:
        w = _kernels.kernel_column(float(mu), n - 1)
        out[1:] = _kernels.toeplitz_apply(w, values[1:])
    return out


def right_sum_values(values: np.ndarray, mu: float) -> np.ndarray:
    """Right fractional sum of order ``mu``; mirror of :func:`left_sum_values`."""
    values = np.asarray(values, dtype=np.float64)
    if mu == 0:
        return values.copy()
    n = values.shape[0]
    out = np.zeros(n)
    if n > 1:
        w = _kernels.kernel_column(float(mu), n - 1)
        out[:-1] = _kernels.toeplitz_apply(w, values[-2::-1])[::-1]
    return out


def left_frac_sum(f: Signal, mu: float, t: int | None = None):
    r"""Left nabla fractional sum

    .. math:: {}_a\nabla^{-\mu} f(t) = \sum_{s=a+1}^{t} k_\mu(t-s+1) f(s),
        \qquad k_\mu(n) = \frac{\Gamma(n+\mu-1)}{\Gamma(n)\Gamma(\mu)}.

    With ``t`` given, returns the value at ``a+1 <= t <= b``; otherwise the
    whole grid as a :class:`Signal`.
    """
    mu = _check_order(mu)
    if t is not None:
        j = _check_point(f, t, f.a + 1, f.b)
        return float(left_sum_values(f.values[: j + 1], mu)[j])
    return Signal(f.a, left_sum_values(f.values, mu))


def right_frac_sum(f: Signal, mu: float, t: int | None = None):
    r"""Right nabla fractional sum
    :math:`\nabla_b^{-\mu} f(t) = \sum_{s=t}^{b-1} k_\mu(s-t+1) f(s)`."""
    mu = _check_order(mu)
    if t is not None:
        j = _check_point(f, t, f.a, f.b - 1)
        return float(right_sum_values(f.values[j:], mu)[0])
    return Signal(f.a, right_sum_values(f.values, mu))


def _rl_order_split(mu: float) -> tuple[int, float]:
    if mu <= 0:
        raise ValueError(f"difference order must be positive, got {mu}")
    n = math.ceil(mu)
    return n, n - mu


def rl_frac_diff_left(f: Signal, mu: float, t: int | None = None):
    """Riemann-Liouville nabla difference ``nabla^n (a nabla^{-(n-mu)} f)``
    with ``n = ceil(mu)``.

    Valid for ``t >= a + n``. In the grid form, slots below ``a + n`` use the
    zero extension of the inner sum to the left of the origin.
    """
    n, rest = _rl_order_split(float(mu))
    if t is not None:
        _check_point(f, t, f.a + n, f.b)
    g = left_sum_values(f.values, rest)
    for _ in range(n):
        g = np.diff(g, prepend=0.0)
    if t is not None:
        return float(g[t - f.a])
    return Signal(f.a, g)


def rl_frac_diff_right(f: Signal, mu: float, t: int | None = None):
    """Right Riemann-Liouville nabla difference ``(-Delta)^n nabla_b^{-(n-mu)} f``."""
    n, rest = _rl_order_split(float(mu))
    if t is not None:
        _check_point(f, t, f.a, f.b - n)
    g = right_sum_values(f.values, rest)
    for _ in range(n):
        g = -np.diff(g, append=0.0)
    if t is not None:
        return float(g[t - f.a])
    return Signal(f.a, g)


def convolve(f: Signal, g: Signal) -> Signal:
    """Nabla convolution ``(f*g)(v) = sum_{s=a+1}^{v} g(v - s + 1 + a) f(s)``.

    Both signals must share the origin ``a``; the result lives on the common
    part of the two grids, with value 0 at ``a``.
    """
    if f.a != g.a:
        raise GridError(f"convolution needs a shared origin, got {f.a} and {g.a}")
    n = min(len(f), len(g))
    out = np.zeros(n)
    if n > 1:
        out[1:] = _kernels.toeplitz_apply(g.values[1:n].copy(), f.values[1:n].copy())
    return Signal(f.a, out)


# ---------------------------------------------------------------------------
# CSV


def write_csv(f: Signal, path=None) -> str:
    """Write ``t,value`` rows; returns the text (and writes it when ``path``
    is given). Values use ``repr`` so a round trip is bit-exact."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "value"])
    for t, v in zip(f.grid, f.values):
        w.writerow([int(t), repr(float(v))])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_csv(source) -> Signal:
    """Read a ``t,value`` CSV (path or open text stream) into a Signal."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text()
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ["t", "value"]:
        raise GridError("signal CSV must start with the header 't,value'")
    body = [r for r in rows[1:] if r]
    if not body:
        raise GridError("signal CSV has no rows")
    ts = [int(r[0]) for r in body]
    if ts != list(range(ts[0], ts[0] + len(ts))):
        raise GridError("signal CSV rows must cover consecutive integers in order")
    return Signal(ts[0], np.array([float(r[1]) for r in body]))
