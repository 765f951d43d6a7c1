"""Distinct-word trajectories R_0..R_n and singleton counts."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .text import NoContentError

__all__ = ["WordTrajectory", "distinct_word_trajectory", "singleton_ratio"]


@dataclass(frozen=True)
class WordTrajectory:
    """Number of distinct tokens among the first k tokens, k = 0..n.

    ``r`` has length ``n + 1`` with ``r[0] == 0``.
    """
    r: np.ndarray
    singletons: int

    @property
    def n(self) -> int:
        return len(self.r) - 1

    @property
    def R_n(self) -> int:
        return int(self.r[-1])

    @classmethod
    def from_counts(cls, r, singletons: int = 0) -> "WordTrajectory":
        r = np.asarray(r, dtype=np.int64)
        if r.ndim != 1 or len(r) < 2 or r[0] != 0:
            raise ValueError("trajectory must start with R_0 = 0 and have n >= 1")
        steps = np.diff(r)
        if np.any((steps != 0) & (steps != 1)):
            raise ValueError("trajectory increments must be 0 or 1")
        return cls(r, int(singletons))


def distinct_word_trajectory(tokens) -> WordTrajectory:
    """One-pass distinct counts for a token sequence (strings or integers)."""
    if isinstance(tokens, np.ndarray) and tokens.dtype.kind in "iu":
        arr = tokens.ravel()
    else:
        tokens = list(tokens)
        arr = np.asarray(tokens) if tokens and isinstance(tokens[0], (int, np.integer)) else None
    if len(tokens if arr is None else arr) == 0:
        raise NoContentError("no analyzable content")
    if arr is not None:
        _, first, counts = np.unique(arr, return_index=True, return_counts=True)
        new = np.zeros(len(arr), dtype=np.int64)
        new[first] = 1
        r = np.concatenate(([0], np.cumsum(new)))
        return WordTrajectory(r, int(np.sum(counts == 1)))

    counts: dict = {}
    r = np.empty(len(tokens) + 1, dtype=np.int64)
    r[0] = 0
    for k, tok in enumerate(tokens, 1):
        counts[tok] = counts.get(tok, 0) + 1
        r[k] = len(counts)
    singles = sum(1 for c in counts.values() if c == 1)
    return WordTrajectory(r, singles)


def singleton_ratio(traj: WordTrajectory) -> float:
    """R_{n,1} / R_n. Under the model this tends to theta; real texts run low."""
    if traj.R_n < 1:
        raise ValueError("trajectory has no words")
    return traj.singletons / traj.R_n
