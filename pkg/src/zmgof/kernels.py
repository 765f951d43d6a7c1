"""Covariance kernels of the limiting vocabulary processes.

``kernel_K``     unpinned process Z
``kernel_K0``    bridge Z - t^theta Z(1)
``kernel_Khat``  bridge with theta replaced by the half-split estimate
"""
from __future__ import annotations

import math

import numpy as np

__all__ = ["kernel_K", "kernel_K0", "kernel_Khat", "khat_constants"]

_LOG2 = math.log(2.0)


def _pow(x, theta):
    return np.power(np.asarray(x, dtype=float), theta)


def _pow_log(x, theta):
    # x^theta log x, continuous at 0 with value 0
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0, x, 1.0)
    return np.where(x > 0, safe ** theta * np.log(safe), 0.0)


def kernel_K(s, t, theta):
    """(s + t)^theta - max(s, t)^theta."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    return _pow(s + t, theta) - _pow(np.maximum(s, t), theta)


def kernel_K0(s, t, theta):
    s_th, t_th = _pow(s, theta), _pow(t, theta)
    return (kernel_K(s, t, theta) - s_th * kernel_K(1.0, t, theta)
            - t_th * kernel_K(s, 1.0, theta)
            + s_th * t_th * kernel_K(1.0, 1.0, theta))


def khat_constants(theta):
    """The two scalar coefficients multiplying the log-correction terms."""
    k11 = kernel_K(1.0, 1.0, theta)
    k1h = kernel_K(1.0, 0.5, theta)
    khh = kernel_K(0.5, 0.5, theta)
    lin = (k11 - 2.0 ** theta * k1h) / _LOG2
    quad = (k11 - 2.0 ** (theta + 1) * k1h + 2.0 ** (2 * theta) * khh) / _LOG2 ** 2
    return float(lin), float(quad)


def kernel_Khat(s, t, theta):
    """Covariance of the bridge built with the estimated exponent."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    lin, quad = khat_constants(theta)
    s_th, t_th = _pow(s, theta), _pow(t, theta)
    s_log, t_log = _pow_log(s, theta), _pow_log(t, theta)
    # s^theta t^theta log s == s_log * t_th, etc.
    out = kernel_K0(s, t, theta)
    out = out - t_log * (kernel_K(s, 1.0, theta) - 2.0 ** theta * kernel_K(s, 0.5, theta)) / _LOG2
    out = out - s_log * (kernel_K(t, 1.0, theta) - 2.0 ** theta * kernel_K(t, 0.5, theta)) / _LOG2
    out = out + (s_log * t_th + s_th * t_log) * lin
    out = out + s_log * t_log * quad
    return out
