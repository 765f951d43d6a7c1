"""End-to-end goodness-of-fit test for a single text."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .bridge import empirical_text_bridge, omega_square
from .estimation import THETA_CAP, THETA_FLOOR, TextTooShort, estimate_theta
from .occupancy import WordTrajectory, distinct_word_trajectory, singleton_ratio
from .smirnov import p_value
from .spectral import DEFAULT_BASIS, NULL_LAWS, null_spectrum
from .text import tokenize
from .zm import DEFAULT_M, ShiftOutOfRange, ZMParams, expected_distinct, fit_shift

__all__ = [
    "AnalysisConfig",
    "TestReport",
    "REPORT_COLUMNS",
    "analyze_trajectory",
    "analyze_text",
]

# reference column order first, extensions after
REPORT_COLUMNS = (
    "source_id", "n", "R_n", "theta_hat", "q_hat", "omega2", "p_value",
    "singleton_ratio", "theta_clamped", "fit_residual", "status",
)


@dataclass(frozen=True)
class AnalysisConfig:
    mode: str = "words"
    keep_hyphens: bool = False
    theta_cap: float = THETA_CAP
    theta_floor: float = THETA_FLOOR
    m_trunc: int = DEFAULT_M
    basis_size: int = DEFAULT_BASIS
    half_index: str = "floor"
    null_law: str = "finite_sample"

    def __post_init__(self):
        if self.null_law not in NULL_LAWS:
            raise ValueError(f"null_law must be one of {NULL_LAWS}")


@dataclass
class TestReport:
    """One table row. ``q_hat``, ``omega2`` and ``p_value`` are NaN when the fit failed."""
    __test__ = False  # not a pytest class

    source_id: str
    n: int
    R_n: int
    theta_hat: float
    q_hat: float = math.nan
    omega2: float = math.nan
    p_value: float = math.nan
    singleton_ratio: float = math.nan
    theta_clamped: bool = False
    fit_residual: float = math.nan
    status: str = "ok"
    bridge: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("bridge")
        return {k: d[k] for k in REPORT_COLUMNS}


def analyze_trajectory(traj: WordTrajectory, config: AnalysisConfig = AnalysisConfig(),
                       source_id: str = "", *, keep_bridge: bool = False) -> TestReport:
    """Estimate, fit, build the text bridge and compute omega^2 and its p-value.

    A failed shift fit is reported in ``status`` rather than raised.
    """
    est = estimate_theta(traj, floor=config.theta_floor, cap=config.theta_cap,
                         half_index=config.half_index)
    report = TestReport(source_id, traj.n, traj.R_n, est.value,
                        singleton_ratio=singleton_ratio(traj),
                        theta_clamped=est.clamped)
    try:
        q_hat = fit_shift(est.value, traj.n, traj.R_n, config.m_trunc)
    except ShiftOutOfRange as exc:
        report.status = str(exc)
        return report
    params = ZMParams.from_theta_q(est.value, q_hat)
    path = empirical_text_bridge(traj, params, config.m_trunc)
    report.q_hat = q_hat
    report.fit_residual = float(path.values[-1] * math.sqrt(traj.R_n))
    report.omega2 = omega_square(path)
    rho = est.value ** 2 * traj.R_n / traj.n
    null = null_spectrum(est.value, config.basis_size, law=config.null_law, rho=rho)
    report.p_value = p_value(null, report.omega2)
    if keep_bridge:
        report.bridge = path.values
    return report


def analyze_text(raw: str, config: AnalysisConfig = AnalysisConfig(),
                 source_id: str = "", *, keep_bridge: bool = False) -> TestReport:
    seq = tokenize(raw, config.mode, keep_hyphens=config.keep_hyphens,
                   source_id=source_id)
    traj = distinct_word_trajectory(seq.tokens)
    return analyze_trajectory(traj, config, source_id, keep_bridge=keep_bridge)
