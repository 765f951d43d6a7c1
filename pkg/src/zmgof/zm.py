"""Zipf-Mandelbrot law p_i = c (i + q)^(-1/theta) and its expected vocabulary curve."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special import hurwitz_zeta, lower_incomplete_gamma

__all__ = [
    "ZMParams",
    "ShiftOutOfRange",
    "zm_probability",
    "expected_distinct",
    "heaps_approximation",
    "fit_shift",
    "DEFAULT_M",
    "SHIFT_BRACKET",
    "SHIFT_ITERATIONS",
]

DEFAULT_M = 1000
SHIFT_BRACKET = (-0.9, 40.0)
SHIFT_ITERATIONS = 20

# k values per block when evaluating the head sum for many k at once
_CHUNK = 4096


@dataclass(frozen=True)
class ZMParams:
    """Zipf-Mandelbrot law. Build with :meth:`from_theta_q` so ``c`` is consistent."""
    theta: float
    q: float
    c: float

    @property
    def alpha(self) -> float:
        return 1.0 / self.theta

    @classmethod
    def from_theta_q(cls, theta: float, q: float) -> "ZMParams":
        theta = float(theta)
        q = float(q)
        if not 0.0 < theta < 1.0:
            raise ValueError(f"theta must lie in (0, 1), got {theta}")
        if not q > -1.0:
            raise ValueError(f"q must exceed -1, got {q}")
        c = 1.0 / hurwitz_zeta(1.0 / theta, q + 1.0)
        return cls(theta, q, c)


class ShiftOutOfRange(ValueError):
    """No sign change of r(n; q) - R_n on the search bracket."""

    def __init__(self, residual_low: float, residual_high: float):
        self.residual_low = residual_low
        self.residual_high = residual_high
        super().__init__(
            "shift out of range: r(n) - R_n = "
            f"{residual_low:.6g} at q={SHIFT_BRACKET[0]}, "
            f"{residual_high:.6g} at q={SHIFT_BRACKET[1]}"
        )


def zm_probability(params: ZMParams, i):
    """p_i for integer rank(s) ``i >= 1``."""
    i = np.asarray(i, dtype=float)
    if np.any(i < 1):
        raise ValueError("ranks start at 1")
    p = params.c * (i + params.q) ** -params.alpha
    return float(p) if p.ndim == 0 else p


def expected_distinct(params: ZMParams, k, M: int = DEFAULT_M):
    """Expected number of distinct words r(k) among k draws.

    The first ``M`` ranks are summed exactly; the remaining ranks are
    replaced by an integral from ``N = M + 0.5 + q``, which has a closed form
    in the lower incomplete gamma function.
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr < 0):
        raise ValueError("k must be non-negative")
    flat = k_arr.ravel()
    theta, c = params.theta, params.c

    with np.errstate(divide="ignore"):
        logq = np.log1p(-zm_probability(params, np.arange(1, M + 1)))
    # p_1 can round to 1 for tiny theta; keep 0 * log(0) finite at k = 0
    logq = np.maximum(logq, -745.0)
    head = np.empty_like(flat)
    for lo in range(0, len(flat), _CHUNK):
        kk = flat[lo:lo + _CHUNK]
        # 1 - (1 - p)^k computed as -expm1(k log1p(-p))
        head[lo:lo + _CHUNK] = -np.expm1(np.outer(kk, logq)).sum(axis=1)

    N = M + 0.5 + params.q
    z = flat * c * N ** -params.alpha
    tail = ((flat * c) ** theta * lower_incomplete_gamma(1.0 - theta, z)
            + N * np.expm1(-z))
    out = (head + tail).reshape(k_arr.shape)
    return float(out) if out.ndim == 0 else out


def heaps_approximation(params: ZMParams, n) -> float:
    """(c n)^theta Gamma(1 - theta) - q, within 2 of r(n)."""
    n = np.asarray(n, dtype=float)
    out = (params.c * n) ** params.theta * math.gamma(1.0 - params.theta) - params.q
    return float(out) if out.ndim == 0 else out


def fit_shift(theta_hat: float, n: int, R_n: int, M: int = DEFAULT_M) -> float:
    """Bisection for q with r(n; theta_hat, q) = R_n.

    Exactly ``SHIFT_ITERATIONS`` halvings of ``SHIFT_BRACKET``; the final
    midpoint is returned. Which end of the bracket is high is read off the
    endpoint residuals rather than assumed.

    Raises
    ------
    ShiftOutOfRange
        When the residual has the same sign at both ends of the bracket.
    """
    if not 0.0 < theta_hat < 1.0:
        raise ValueError(f"theta_hat must lie in (0, 1), got {theta_hat}")
    if not 1 <= R_n <= n:
        raise ValueError("need 1 <= R_n <= n")

    def g(q):
        return expected_distinct(ZMParams.from_theta_q(theta_hat, q), n, M) - R_n

    lo, hi = SHIFT_BRACKET
    g_lo, g_hi = g(lo), g(hi)
    if not (np.isfinite(g_lo) and np.isfinite(g_hi)) or np.sign(g_lo) == np.sign(g_hi):
        raise ShiftOutOfRange(float(g_lo), float(g_hi))
    for _ in range(SHIFT_ITERATIONS):
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if np.sign(g_mid) == np.sign(g_lo):
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
    return 0.5 * (lo + hi)
