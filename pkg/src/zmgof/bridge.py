"""Empirical bridges of the vocabulary trajectory and the omega-square statistic."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .occupancy import WordTrajectory
from .zm import DEFAULT_M, ZMParams, expected_distinct

__all__ = [
    "BridgePath",
    "empirical_bridge",
    "empirical_text_bridge",
    "omega_square",
    "segment_integral",
]


@dataclass(frozen=True)
class BridgePath:
    """Path values at t = k/n, k = 0..n; linear in between."""
    values: np.ndarray
    kind: str

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.n + 1) / self.n

    def __call__(self, t):
        return np.interp(t, self.t, self.values)


def empirical_bridge(traj: WordTrajectory, theta_hat) -> BridgePath:
    """(R_k - (k/n)^theta R_n) / sqrt(R_n): deviation from a pure power curve."""
    theta = float(theta_hat)
    n, R_n = traj.n, traj.R_n
    k = np.arange(n + 1)
    vals = (traj.r - (k / n) ** theta * R_n) / np.sqrt(R_n)
    vals[0] = 0.0
    vals[-1] = 0.0
    return BridgePath(vals, "z_hat")


def empirical_text_bridge(traj: WordTrajectory, params: ZMParams,
                          M: int = DEFAULT_M) -> BridgePath:
    """(R_k - r(k)) / sqrt(R_n), with r the expected vocabulary under ``params``."""
    k = np.arange(traj.n + 1)
    r = expected_distinct(params, k, M)
    return BridgePath((traj.r - r) / np.sqrt(traj.R_n), "z_tilde")


def omega_square(path: BridgePath) -> float:
    """Integral over [0, 1] of the squared piecewise-linear path.

    Uses (1/3n) sum_{k=1}^{n-1} a_k (2 a_k + a_{k+1}), which is exact when
    the path is pinned to zero at both ends.
    """
    a = np.asarray(path.values, dtype=float)
    n = len(a) - 1
    if n < 2:
        raise ValueError("omega_square needs n >= 2")
    inner = a[1:n]
    return float(np.sum(inner * (2.0 * inner + a[2:n + 1])) / (3.0 * n))


def segment_integral(values) -> float:
    """Sum over segments of (h/3)(a^2 + ab + b^2); exact for any endpoints."""
    a = np.asarray(values, dtype=float)
    h = 1.0 / (len(a) - 1)
    left, right = a[:-1], a[1:]
    return float(h / 3.0 * np.sum(left * left + left * right + right * right))
