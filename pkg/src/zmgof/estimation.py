"""Estimating the Zipf exponent theta from the vocabulary trajectory.

The general estimator integrates ``log+ R_[nt]`` against a signed measure
``dA`` on (0, 1] normalised by ``int log t dA(t) = 1``. The default,
``log2(R_n / R_[n/2])``, is the measure with mass ``-1/log 2`` at 1/2 and
``+1/log 2`` at 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .occupancy import WordTrajectory

__all__ = [
    "TextTooShort",
    "ThetaEstimate",
    "AFunctional",
    "half_split_functional",
    "estimate_theta",
    "estimate_theta_general",
    "THETA_CAP",
    "THETA_FLOOR",
]

THETA_CAP = 0.95
THETA_FLOOR = 0.05

HalfIndex = Literal["floor", "interpolated"]


class TextTooShort(ValueError):
    """Fewer than two tokens, or an empty first half."""


@dataclass(frozen=True)
class ThetaEstimate:
    value: float
    raw: float
    clamped: bool

    def __float__(self) -> float:
        return self.value


def _clamp(raw: float, floor: float, cap: float) -> ThetaEstimate:
    value = min(max(raw, floor), cap)
    return ThetaEstimate(value, raw, value != raw)


def _check(traj: WordTrajectory):
    if traj.n < 2:
        raise TextTooShort("text too short: need at least two tokens")


def _interp_R(traj: WordTrajectory, x: float) -> float:
    return float(np.interp(x, np.arange(traj.n + 1), traj.r))


def estimate_theta(traj: WordTrajectory, *, floor: float = THETA_FLOOR,
                   cap: float = THETA_CAP,
                   half_index: HalfIndex = "floor") -> ThetaEstimate:
    """log2(R_n / R_[n/2]), clamped to ``[floor, cap]``.

    ``half_index="floor"`` uses ``R_{floor(n/2)}``. ``"interpolated"``
    evaluates the piecewise-linear trajectory at ``(n + 1) / 2`` instead;
    the Shakespeare reference table was produced that way.
    """
    _check(traj)
    if half_index == "floor":
        R_half = float(traj.r[traj.n // 2])
    elif half_index == "interpolated":
        R_half = _interp_R(traj, (traj.n + 1) / 2)
    else:
        raise ValueError(f"unknown half_index {half_index!r}")
    if R_half < 1:
        raise TextTooShort("text too short: empty first half")
    return _clamp(math.log2(traj.R_n / R_half), floor, cap)


@dataclass(frozen=True)
class AFunctional:
    """Signed measure dA on (0, 1]: point masses plus an optional density.

    ``atoms`` is a sequence of ``(t, mass)`` pairs. ``density`` is the
    derivative A'(t), supported on ``support``.
    """
    atoms: Sequence[tuple] = ()
    density: Callable[[np.ndarray], np.ndarray] | None = None
    support: tuple = (0.5, 1.0)
    tol: float = field(default=1e-10, compare=False)

    def integrate(self, g: Callable[[np.ndarray], np.ndarray],
                  breakpoints: np.ndarray | None = None, order: int = 8) -> float:
        """int g dA. ``g`` is integrated cell by cell between ``breakpoints``."""
        total = sum(m * float(g(np.array([t]))[0]) for t, m in self.atoms)
        if self.density is not None:
            lo, hi = self.support
            edges = np.array([lo, hi]) if breakpoints is None else breakpoints
            edges = np.unique(np.clip(np.concatenate(([lo, hi], edges)), lo, hi))
            x, w = leggauss(order)
            a, b = edges[:-1, None], edges[1:, None]
            nodes = 0.5 * (b - a) * x + 0.5 * (a + b)
            wts = 0.5 * (b - a) * w
            total += float(np.sum(wts * self.density(nodes) * g(nodes)))
        return total

    def validate(self) -> None:
        """Check ``int log t dA = 1``, zero total mass and support away from 0."""
        if any(not 0.0 < t <= 1.0 for t, _ in self.atoms):
            raise ValueError("A-functional atoms must lie in (0, 1]")
        if self.density is not None and not 0.0 < self.support[0] < self.support[1] <= 1.0:
            raise ValueError("A-functional density must vanish near 0")
        fine = np.linspace(self.support[0], self.support[1], 4097)
        mass = self.integrate(np.ones_like, fine, order=20)
        norm = self.integrate(np.log, fine, order=20)
        if abs(mass) > self.tol:
            raise ValueError(f"A-functional total mass {mass:.3g} is not zero")
        if abs(norm - 1.0) > self.tol:
            raise ValueError(f"A-functional gives int log t dA = {norm!r}, expected 1")


def half_split_functional() -> AFunctional:
    w = 1.0 / math.log(2.0)
    return AFunctional(atoms=((0.5, -w), (1.0, w)))


def estimate_theta_general(traj: WordTrajectory, A: AFunctional, *,
                           floor: float = THETA_FLOOR,
                           cap: float = THETA_CAP) -> ThetaEstimate:
    """theta_hat = int_0^1 log+ R_[nt] dA(t), clamped to ``[floor, cap]``."""
    _check(traj)
    A.validate()
    n = traj.n
    log_r = np.log(np.maximum(traj.r, 1).astype(float))

    def g(t):
        # R_[nt]; the tiny offset keeps floor(n * k/n) == k under rounding
        idx = np.floor(np.asarray(t) * n + 1e-9).astype(int)
        return log_r[np.clip(idx, 0, n)]

    raw = A.integrate(g, np.arange(n + 1) / n)
    return _clamp(raw, floor, cap)
