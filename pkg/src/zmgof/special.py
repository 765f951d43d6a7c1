"""Hurwitz zeta and lower incomplete gamma, vectorised over the second argument."""
from __future__ import annotations

import math

import numpy as np

__all__ = ["hurwitz_zeta", "lower_incomplete_gamma"]

# B_2, B_4, ..., B_20
_BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
)
_EM_HEAD = 16


def hurwitz_zeta(alpha, x):
    """zeta(alpha, x) = sum_{i>=0} (i + x)^(-alpha).

    Direct sum of the first 16 terms plus an Euler-Maclaurin tail with ten
    Bernoulli corrections; relative error is below 1e-14 for alpha up to ~30.
    """
    alpha = float(alpha)
    if not alpha > 1.0 + 1e-9:
        raise ValueError(f"divergent zeta: alpha={alpha} must exceed 1")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("hurwitz_zeta requires x > 0")

    i = np.arange(_EM_HEAD, dtype=float)
    head = np.sum((x[..., None] + i) ** -alpha, axis=-1)
    a = x + _EM_HEAD
    tail = a ** (1.0 - alpha) / (alpha - 1.0) + 0.5 * a ** -alpha
    # coefficient of B_{2j}: alpha (alpha+1) ... (alpha+2j-2) / (2j)!
    rising = alpha
    fact = 2.0
    power = a ** (-alpha - 1.0)
    for j, b2j in enumerate(_BERNOULLI_EVEN, 1):
        tail = tail + b2j / fact * rising * power
        rising *= (alpha + 2 * j - 1) * (alpha + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        power = power / (a * a)
    out = head + tail
    return float(out) if out.ndim == 0 else out


def _gamma_series(s, u, tol=1e-16, maxiter=500):
    # gamma(s,u) = u^s e^-u sum_n u^n / (s (s+1) ... (s+n))
    term = np.full_like(u, 1.0 / s)
    total = term.copy()
    for n in range(1, maxiter):
        term = term * u / (s + n)
        total += term
        if np.all(np.abs(term) <= tol * np.abs(total)):
            break
    return total * np.exp(s * np.log(u) - u)


def _upper_gamma_cf(s, u, tol=1e-16, maxiter=1000):
    # Modified Lentz evaluation of the continued fraction for Gamma(s,u)
    tiny = 1e-300
    b = u + 1.0 - s
    c = np.full_like(u, 1.0 / tiny)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, maxiter):
        an = -i * (i - s)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < tiny, tiny, d)
        c = b + an / c
        c = np.where(np.abs(c) < tiny, tiny, c)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) <= tol):
            break
    return np.exp(s * np.log(u) - u) * h


def lower_incomplete_gamma(s, u):
    """gamma(s, u) = int_0^u z^(s-1) e^-z dz for s in (0, 1], u >= 0.

    Power series below ``u = s + 1``, otherwise Gamma(s) minus a continued
    fraction for the upper tail.
    """
    s = float(s)
    if not 0.0 < s <= 1.0:
        raise ValueError(f"lower_incomplete_gamma needs s in (0, 1], got {s}")
    u = np.asarray(u, dtype=float)
    if np.any(u < 0) or np.any(np.isnan(u)):
        raise ValueError("lower_incomplete_gamma needs u >= 0")
    out = np.zeros_like(u)
    small = (u > 0) & (u < s + 1.0)
    large = u >= s + 1.0
    if np.any(small):
        out[small] = _gamma_series(s, u[small])
    if np.any(large):
        ul = u[large]
        upper = np.where(np.isinf(ul), 0.0, _upper_gamma_cf(s, np.where(np.isinf(ul), 1.0, ul)))
        out[large] = math.gamma(s) - upper
    return float(out) if out.ndim == 0 else out
