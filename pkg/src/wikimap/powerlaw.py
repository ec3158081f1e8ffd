"""Discrete power-law tail fit for edge-weight distributions."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import zeta

from .errors import DegenerateSupport, InsufficientTail
from .stats import Histogram

GAMMA_BOUNDS = (1.05, 6.0)
MIN_TAIL = 50


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float  # negative slope, as plotted on log-log axes
    xmin: int
    n_tail: int
    stderr: float
    stderr_approximate: bool = True
    log_likelihood: float = float("nan")

    @property
    def exponent(self) -> float:
        return -self.gamma


def _tail(hist, xmin: int):
    items = hist.items if isinstance(hist, Histogram) else tuple(hist)
    values = np.array([v for v, f in items if v >= xmin], dtype=np.float64)
    freqs = np.array([f for v, f in items if v >= xmin], dtype=np.float64)
    return values, freqs


def log_likelihood(gamma: float, n_tail: float, sum_log: float, xmin: int) -> float:
    """Log-likelihood of a discrete power law with Hurwitz-zeta normalization."""
    return -gamma * sum_log - n_tail * math.log(zeta(gamma, xmin))


def fit_power_law(hist, xmin: int = 20, tol: float = 1e-6) -> PowerLawFit:
    """Maximum-likelihood exponent of ``P(x) ~ x**-gamma`` for x >= xmin.

    ``hist`` holds ``(value, frequency)`` pairs. The reported ``gamma`` is
    negative; the standard error uses the continuous approximation
    ``(gamma - 1) / sqrt(n)``.
    """
    if xmin < 1:
        raise ValueError("xmin must be >= 1")
    values, freqs = _tail(hist, xmin)
    n_tail = int(freqs.sum())
    if n_tail < MIN_TAIL:
        raise InsufficientTail(f"{n_tail} samples >= {xmin}; need at least {MIN_TAIL}")
    if len(values) < 2:
        raise DegenerateSupport(f"all {n_tail} tail samples equal {int(values[0])}")
    sum_log = float(np.dot(freqs, np.log(values)))
    result = minimize_scalar(
        lambda g: -log_likelihood(g, n_tail, sum_log, xmin),
        bounds=GAMMA_BOUNDS,
        method="bounded",
        options={"xatol": tol},
    )
    g = float(result.x)
    return PowerLawFit(
        gamma=-g,
        xmin=xmin,
        n_tail=n_tail,
        stderr=(g - 1.0) / math.sqrt(n_tail),
        log_likelihood=-float(result.fun),
    )


def sample_discrete_power_law(gamma: float, xmin: int, size: int, rng=None) -> np.ndarray:
    """Exact draws from ``P(x) = x**-gamma / zeta(gamma, xmin)`` for x >= xmin.

    Inverts the survival function ``zeta(gamma, x) / zeta(gamma, xmin)``
    by bisection on the integers.
    """
    if gamma <= 1.0:
        raise ValueError("gamma must exceed 1")
    rng = np.random.default_rng(rng)
    u = 1.0 - rng.random(size)  # (0, 1]
    norm = zeta(gamma, xmin)

    def survival(x):
        return zeta(gamma, x.astype(np.float64)) / norm

    # the continuous approximation is usually exact; bisect the rest
    guess = np.floor((xmin - 0.5) * u ** (-1.0 / (gamma - 1.0)) + 0.5)
    x = np.maximum(np.minimum(guess, 2.0**52), xmin).astype(np.int64)
    wrong = ~((survival(x) >= u) & (survival(x + 1) < u))
    idx = np.flatnonzero(wrong)
    if idx.size:
        x[idx] = _bisect(survival, u[idx], x[idx], xmin)
    return x


def _bisect(survival, u, start, xmin):
    lo = np.full(len(u), xmin, dtype=np.int64)
    hi = np.maximum(start * 2, xmin + 1)
    while True:
        short = survival(hi) >= u
        if not short.any():
            break
        lo = np.where(short, hi, lo)
        hi = np.where(short, hi * 2, hi)
    while True:
        gap = hi - lo > 1
        if not gap.any():
            break
        mid = (lo + hi) // 2
        up = survival(mid) >= u
        lo = np.where(gap & up, mid, lo)
        hi = np.where(gap & ~up, mid, hi)
    return lo


def histogram_of(samples) -> Histogram:
    values, counts = np.unique(np.asarray(samples), return_counts=True)
    return Histogram(tuple(zip(values.tolist(), counts.tolist())))
