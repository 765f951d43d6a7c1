"""Goodness-of-fit test of the Zipf-Mandelbrot law based on vocabulary growth.

A text is reduced to its distinct-word trajectory R_1, ..., R_n; the shape
parameter theta and the shift q are estimated, the normalised deviation of R
from its expectation is summarised by an omega-square statistic, and its null
law, a weighted sum of chi-square variables, is evaluated by Smirnov's formula
on a Galerkin approximation of the covariance kernel spectrum.
"""
from .bridge import BridgePath, empirical_bridge, empirical_text_bridge, omega_square
from .estimation import (AFunctional, TextTooShort, ThetaEstimate, estimate_theta,
                         estimate_theta_general, half_split_functional)
from .kernels import kernel_K, kernel_K0, kernel_Khat
from .occupancy import WordTrajectory, distinct_word_trajectory, singleton_ratio
from .pipeline import REPORT_COLUMNS, AnalysisConfig, TestReport, analyze_text, analyze_trajectory
from .smirnov import DegenerateSpectrum, SmirnovSeriesWarning, cdf_w2, p_value
from .spectral import (NULL_LAWS, KernelConfig, SpectralDecomposition, eigen_decompose,
                       null_spectrum, q_matrix, spectrum)
from .text import NoContentError, TokenSequence, tokenize
from .zm import ShiftOutOfRange, ZMParams, expected_distinct, fit_shift, zm_probability

__version__ = "0.1.0"

__all__ = [
    "AFunctional", "AnalysisConfig", "BridgePath", "DegenerateSpectrum", "KernelConfig",
    "NULL_LAWS", "NoContentError", "REPORT_COLUMNS", "ShiftOutOfRange", "SmirnovSeriesWarning",
    "SpectralDecomposition", "TestReport", "TextTooShort", "ThetaEstimate", "TokenSequence",
    "WordTrajectory", "ZMParams", "analyze_text", "analyze_trajectory", "cdf_w2",
    "distinct_word_trajectory", "eigen_decompose", "empirical_bridge", "empirical_text_bridge",
    "estimate_theta", "estimate_theta_general", "expected_distinct", "fit_shift",
    "half_split_functional", "kernel_K", "kernel_K0", "kernel_Khat", "null_spectrum",
    "omega_square", "p_value", "q_matrix", "singleton_ratio", "spectrum", "tokenize",
    "zm_probability",
]
