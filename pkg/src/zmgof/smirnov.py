"""Distribution of a weighted sum of chi-square(1) variables by Smirnov's formula.

For W = sum_k eta_k^2 / lambda_k with 0 < lambda_1 < lambda_2 < ...,

    F(x) = 1 + (1/pi) sum_k (-1)^k int_{lambda_{2k-1}}^{lambda_{2k}}
               exp(-lambda x / 2) / sqrt(-D(lambda)) dlambda / lambda,

    D(lambda) = prod_j (1 - lambda / lambda_j).

On each interval the substitution lambda = a + (b - a) sin^2 u removes the
inverse square-root singularities at both ends, leaving a smooth integrand
on [0, pi/2] that is integrated by 64-point Gauss-Legendre.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .spectral import SpectralDecomposition

__all__ = [
    "DegenerateSpectrum",
    "SmirnovSeriesWarning",
    "SmirnovEvaluation",
    "cdf_w2",
    "cdf_w2_detail",
    "p_value",
]

_NODES, _WEIGHTS = leggauss(64)
_U = 0.25 * math.pi * (_NODES + 1.0)
_UW = 0.25 * math.pi * _WEIGHTS
_SIN2 = np.sin(_U) ** 2
_TERM_TOL = 1e-10
_CLIP_SLACK = 1e-6


class DegenerateSpectrum(ValueError):
    """Fewer than two positive eigenvalues."""


class SmirnovSeriesWarning(RuntimeWarning):
    """Interval terms did not decrease monotonically, or F left [0, 1]."""


@dataclass(frozen=True)
class SmirnovEvaluation:
    value: float
    raw: float
    terms: int
    monotone: bool
    in_range: bool


def _interval_pairs(lam: np.ndarray):
    m = len(lam) - len(lam) % 2
    return lam[0:m:2], lam[1:m:2]


def _pair_integrals(lam: np.ndarray, x: float) -> np.ndarray:
    a, b = _interval_pairs(lam)
    # all pairs at once: (pairs, nodes)
    grid = a[:, None] + (b - a)[:, None] * _SIN2[None, :]
    ratio = grid[:, :, None] / lam[None, None, :]
    logabs = np.log(np.abs(1.0 - ratio))
    # drop the two factors that vanish at the interval ends
    pair = np.arange(len(a))
    logabs[pair, :, 2 * pair] = 0.0
    logabs[pair, :, 2 * pair + 1] = 0.0
    log_rest = logabs.sum(axis=2)
    # dlambda / sqrt((lambda/a - 1)(1 - lambda/b)) = 2 sqrt(a b) du
    integrand = 2.0 * np.sqrt(a * b)[:, None] * np.exp(-0.5 * grid * x - 0.5 * log_rest) / grid
    return integrand @ _UW


def cdf_w2_detail(spec: SpectralDecomposition | np.ndarray, x: float) -> SmirnovEvaluation:
    """Evaluate F(x) and report how the alternating series behaved.

    ``spec`` is a decomposition or an increasing array of lambdas. With an odd
    number of lambdas the largest is dropped so intervals pair up.
    """
    lam = np.asarray(spec.lam if isinstance(spec, SpectralDecomposition) else spec, dtype=float)
    lam = lam[lam > 0]
    if len(lam) < 2:
        raise DegenerateSpectrum("degenerate spectrum: need at least two positive eigenvalues")
    if np.any(np.diff(lam) <= 0):
        raise ValueError("lambdas must be strictly increasing")
    x = float(x)
    if not x > 0:
        raise ValueError("cdf_w2 needs x > 0")

    integrals = _pair_integrals(lam, x)
    if not np.all(np.isfinite(integrals)):
        raise ArithmeticError("non-finite Smirnov integrand")
    mags = np.abs(integrals)
    below = np.nonzero(mags < _TERM_TOL)[0]
    used = int(below[0]) + 1 if len(below) else len(mags)
    signs = np.where(np.arange(1, used + 1) % 2 == 0, 1.0, -1.0)
    raw = 1.0 + float(np.dot(signs, integrals[:used])) / math.pi
    monotone = bool(np.all(np.diff(mags[:used]) <= 1e-12 * max(mags[0], 1e-300)))
    in_range = -_CLIP_SLACK <= raw <= 1.0 + _CLIP_SLACK
    return SmirnovEvaluation(min(max(raw, 0.0), 1.0), raw, used, monotone, in_range)


def cdf_w2(spec, x: float) -> float:
    """F(x) for the quadratic form with the given spectrum, clipped to [0, 1]."""
    ev = cdf_w2_detail(spec, x)
    if not ev.monotone:
        warnings.warn(f"Smirnov series terms not monotone at x={x:g}",
                      SmirnovSeriesWarning, stacklevel=2)
    if not ev.in_range:
        warnings.warn(f"Smirnov CDF {ev.raw:.3g} outside [0, 1] at x={x:g}",
                      SmirnovSeriesWarning, stacklevel=2)
    return ev.value


def p_value(spec, omega2_obs: float) -> float:
    """1 - F(omega2_obs), clipped to [0, 1]; exactly 1 for omega2_obs == 0."""
    omega2_obs = float(omega2_obs)
    if omega2_obs < 0:
        raise ValueError("omega2 must be non-negative")
    if omega2_obs == 0.0:
        return 1.0
    return min(max(1.0 - cdf_w2(spec, omega2_obs), 0.0), 1.0)
