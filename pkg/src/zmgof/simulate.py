"""Monte-Carlo tools: synthetic Zipf-Mandelbrot texts and quadratic-form samples.

Random streams come from numpy's PCG64 seeded with ``SeedSequence((seed, rep))``,
so every replication is reproducible on its own and results do not depend
on the order in which replications run.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .occupancy import distinct_word_trajectory
from .pipeline import AnalysisConfig, TestReport, analyze_trajectory
from .special import hurwitz_zeta
from .spectral import SpectralDecomposition
from .text import TokenSequence
from .zm import ZMParams, zm_probability

__all__ = [
    "RNG_ALGORITHM",
    "SimConfig",
    "ZMSampler",
    "rng_for",
    "sample_text",
    "EmpiricalCDF",
    "mc_quadratic_form",
    "null_pvalue_experiment",
    "duplicated_text",
    "disjoint_concatenation",
    "alternative_pvalue_experiment",
    "pvalue_array",
]

RNG_ALGORITHM = "numpy PCG64, SeedSequence(entropy=(seed, rep))"

_HEAD_TOL = 1e-12
_HEAD_CAP = 1_000_000
_CHUNK = 65536
# ranks beyond this are relabelled uniquely; a repeat there has probability ~0
_HUGE_RANK = 2 ** 62


@dataclass(frozen=True)
class SimConfig:
    params: ZMParams
    n: int
    reps: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.reps < 1:
            raise ValueError("need n >= 1 and reps >= 1")


def rng_for(seed: int, rep: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((int(seed), int(rep)))))


class ZMSampler:
    """Exact i.i.d. sampler of Zipf-Mandelbrot ranks.

    Ranks up to the first index whose cumulative mass exceeds 1 - 1e-12
    (at most ``head_cap``) are drawn by inverse CDF. Heavier tails, which
    for theta near 1 hold percent-level mass beyond any table, are drawn by
    rejection from a discretised Pareto envelope; y^(-alpha) is convex, so
    its integral over a unit cell dominates the point value and the
    acceptance ratio never exceeds 1.
    """

    def __init__(self, params: ZMParams, head_cap: int = _HEAD_CAP):
        self.params = params
        cum = []
        total = 0.0
        start = 1
        while start <= head_cap:
            stop = min(start + _CHUNK, head_cap + 1)
            block = np.cumsum(zm_probability(params, np.arange(start, stop))) + total
            cut = np.searchsorted(block, 1.0 - _HEAD_TOL, side="right")
            if cut < len(block):
                cum.append(block[:cut + 1])
                break
            cum.append(block)
            total = block[-1]
            start = stop
        self.head_cdf = np.concatenate(cum)
        self.head_size = len(self.head_cdf)
        self.tail_mass = params.c * hurwitz_zeta(params.alpha, self.head_size + 1 + params.q)

    def _tail(self, rng: np.random.Generator, size: int) -> np.ndarray:
        alpha, q = self.params.alpha, self.params.q
        y0 = self.head_size + 0.5 + q
        out = np.empty(size, dtype=float)
        filled = 0
        while filled < size:
            m = size - filled
            v = 1.0 - rng.random(m)
            with np.errstate(over="ignore"):
                y = y0 * v ** (-1.0 / (alpha - 1.0))
            i = np.floor(y - q + 0.5)
            i = np.maximum(i, self.head_size + 1)
            x = i + q
            h = 0.5 / x
            lo = (1.0 - alpha) * np.log1p(-h)
            hi = (1.0 - alpha) * np.log1p(h)
            # (x - 1/2)^(1-a) - (x + 1/2)^(1-a), without cancellation
            cell = x ** (1.0 - alpha) * np.exp(hi) * np.expm1(lo - hi)
            accept_prob = (alpha - 1.0) * x ** -alpha / cell
            ok = np.isfinite(i) & (rng.random(m) <= accept_prob)
            ok |= ~np.isfinite(i)
            got = i[ok]
            out[filled:filled + len(got)] = got
            filled += len(got)
        return out

    def ranks(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """``n`` ranks as int64; astronomically rare ranks get unique negative labels."""
        u = rng.random(n)
        in_head = u < self.head_cdf[-1]
        out = np.empty(n, dtype=np.int64)
        out[in_head] = np.searchsorted(self.head_cdf, u[in_head], side="right") + 1
        n_tail = int(np.count_nonzero(~in_head))
        if n_tail:
            tail = self._tail(rng, n_tail)
            huge = ~(tail < _HUGE_RANK)
            labels = np.where(huge, 0, tail).astype(np.int64)
            labels[huge] = -1 - np.arange(int(np.count_nonzero(huge)))
            out[~in_head] = labels
        return out


def sample_text(cfg: SimConfig, rep: int = 0, sampler: ZMSampler | None = None) -> TokenSequence:
    """Integer-labelled text of ``cfg.n`` i.i.d. words; deterministic in (seed, rep)."""
    sampler = sampler or ZMSampler(cfg.params)
    ranks = sampler.ranks(rng_for(cfg.seed, rep), cfg.n)
    return TokenSequence(tuple(ranks.tolist()), "ranks", f"zm-seed{cfg.seed}-rep{rep}",
                         {"rng": RNG_ALGORITHM, "theta": cfg.params.theta, "q": cfg.params.q})


class EmpiricalCDF:
    def __init__(self, samples):
        self.samples = np.sort(np.asarray(samples, dtype=float))

    def __call__(self, x):
        return np.searchsorted(self.samples, x, side="right") / len(self.samples)

    @property
    def mean(self) -> float:
        return float(self.samples.mean())

    @property
    def std_error(self) -> float:
        return float(self.samples.std(ddof=1) / math.sqrt(len(self.samples)))


def mc_quadratic_form(spec: SpectralDecomposition, reps: int, seed: int = 0,
                      block: int = 20000) -> EmpiricalCDF:
    """Samples of sum_k eta_k^2 / lambda_k over the retained spectrum."""
    lam = np.asarray(spec.lam if isinstance(spec, SpectralDecomposition) else spec)
    rng = rng_for(seed, 0)
    out = np.empty(reps)
    for lo in range(0, reps, block):
        m = min(block, reps - lo)
        out[lo:lo + m] = (rng.standard_normal((m, len(lam))) ** 2 / lam).sum(axis=1)
    return EmpiricalCDF(out)


def _run(cfg: SimConfig, make_text, config: AnalysisConfig, workers: int) -> list:
    sampler = ZMSampler(cfg.params)

    def one(rep):
        tokens = make_text(sampler, rng_for(cfg.seed, rep))
        traj = distinct_word_trajectory(tokens)
        try:
            return analyze_trajectory(traj, config, f"rep{rep}")
        except ValueError as exc:
            return TestReport(f"rep{rep}", traj.n, traj.R_n, math.nan, status=str(exc))

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(one, range(cfg.reps)))
    return [one(rep) for rep in range(cfg.reps)]


def null_pvalue_experiment(cfg: SimConfig, config: AnalysisConfig = AnalysisConfig(),
                           workers: int = 1) -> list:
    """Full test on ``cfg.reps`` texts drawn from the model; one report per rep.

    Failed fits keep their place in the list with NaN p-values.
    """
    return _run(cfg, lambda s, rng: s.ranks(rng, cfg.n), config, workers)


def duplicated_text(sampler: ZMSampler, rng: np.random.Generator, n: int) -> np.ndarray:
    """A model text of length n // 2 followed by itself."""
    half = sampler.ranks(rng, n // 2)
    return np.concatenate((half, half))


def disjoint_concatenation(sampler: ZMSampler, rng: np.random.Generator, n: int) -> np.ndarray:
    """Two independent halves whose vocabularies cannot overlap."""
    first = sampler.ranks(rng, n // 2)
    second = sampler.ranks(rng, n - n // 2)
    # shift positive ranks past the first half; negative labels are already unique
    offset = int(np.abs(first).max()) + int(np.abs(second).max()) + 1
    second = np.where(second > 0, second + offset, second - offset)
    return np.concatenate((first, second))


def alternative_pvalue_experiment(cfg: SimConfig, kind: str,
                                  config: AnalysisConfig = AnalysisConfig(),
                                  workers: int = 1) -> list:
    """Like :func:`null_pvalue_experiment` for a non-homogeneous text.

    ``kind`` is ``"duplicated"`` or ``"disjoint"``.
    """
    makers = {"duplicated": duplicated_text, "disjoint": disjoint_concatenation}
    if kind not in makers:
        raise ValueError(f"unknown alternative {kind!r}")
    make = makers[kind]
    return _run(cfg, lambda s, rng: make(s, rng, cfg.n), config, workers)


def pvalue_array(reports, failed_as: float = math.nan) -> np.ndarray:
    """p-values of a list of reports; failed fits become ``failed_as``.

    A failed shift fit means no law with the estimated theta reproduces the
    observed vocabulary size, so for power comparisons ``failed_as=0.0``
    (outright rejection) is the natural reading.
    """
    return np.array([r.p_value if r.ok else failed_as for r in reports], dtype=float)
