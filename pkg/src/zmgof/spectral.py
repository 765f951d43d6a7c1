"""Spectrum of the bridge covariance kernel by a sine-basis Galerkin method.

The kernel is projected onto ``sin(pi i t)``, i = 1..N. Each matrix entry

    q_ij = int int Khat(s, t) sin(pi i s) sin(pi j t) ds dt

reduces to one-dimensional oscillatory integrals (the ``BuildingBlocks``),
which are computed by Gauss-Legendre panels laid between the zeros of the
oscillating factor. Panels touching t = 0 are refined geometrically, which
takes care of the t^theta and t^theta log t endpoint behaviour.

The sine functions have squared norm 1/2, so the operator matrix in the
orthonormal basis ``sqrt(2) sin(pi i t)`` is ``2 Q``; its eigenvalues are the
kernel eigenvalues.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from .kernels import kernel_K, kernel_Khat, khat_constants

__all__ = [
    "KernelConfig",
    "BuildingBlocks",
    "SpectralDecomposition",
    "QuadratureError",
    "building_blocks",
    "q_matrix",
    "eigen_decompose",
    "spectrum",
    "clear_spectrum_cache",
    "trace_integral",
    "j_matrix",
    "depoissonization_matrix",
    "null_spectrum",
    "NULL_LAWS",
    "NU_CUTOFF",
]

NU_CUTOFF = 1e-8
DEFAULT_BASIS = 100
NULL_LAWS = ("asymptotic", "finite_sample", "unnormalized")

_ORDER = 16
_GRADE_RATIO = 0.25
_GRADE_LEVELS = 28
_LOG2 = math.log(2.0)


class QuadratureError(ArithmeticError):
    """Oscillatory quadrature failed its self-check."""


@dataclass(frozen=True)
class KernelConfig:
    theta: float
    basis_size: int = DEFAULT_BASIS

    def __post_init__(self):
        if not 0.0 < self.theta < 1.0:
            raise ValueError(f"theta must lie in (0, 1), got {self.theta}")
        if self.basis_size < 1:
            raise ValueError("basis_size must be >= 1")


@lru_cache(maxsize=None)
def _gauss(order):
    return leggauss(order)


def _panels(k: int, a: float, b: float, order: int = _ORDER):
    """Nodes and weights on [a, b] with breakpoints at multiples of 1/(2k)."""
    step = 1.0 / (2 * k)
    lo = math.ceil(a / step - 1e-12)
    hi = math.floor(b / step + 1e-12)
    edges = np.concatenate(([a], np.arange(lo, hi + 1) * step, [b]))
    edges = np.unique(edges)
    if a == 0.0:
        # geometric refinement of the first panel towards the origin
        first = edges[1]
        graded = first * _GRADE_RATIO ** np.arange(_GRADE_LEVELS, 0, -1)
        edges = np.concatenate(([0.0], graded, edges[1:]))
    x, w = _gauss(order)
    left, right = edges[:-1, None], edges[1:, None]
    half = 0.5 * (right - left)
    nodes = (half * x + 0.5 * (left + right)).ravel()
    weights = (half * w).ravel()
    return nodes, weights


def _panels_2k(k, a, b):
    """Two panel rules, the second at double order, for error estimation."""
    return _panels(k, a, b), _panels(k, a, b, 2 * _ORDER)


@dataclass(frozen=True)
class BuildingBlocks:
    """One-dimensional integrals, 1-based index k stored at position k - 1.

    A_k = int_0^1 t^th sin(pi k t)            (k up to 2N)
    B_k = int_1^2 t^th sin(pi k t)
    C_k = int_0^1 t^(th+1) cos(pi k t)
    D_k = int_1^2 t^th (2 - t) cos(pi k t)
    F_k = int_0^1 K(t, 1) sin(pi k t)
    G_k = int_0^1 t^th log t sin(pi k t)
    H_k = int_0^1 K(t, 1/2) sin(pi k t)
    """
    theta: float
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    F: np.ndarray
    G: np.ndarray
    H: np.ndarray
    error_estimate: float = field(default=0.0, compare=False)

    def A_signed(self, m):
        """A_m extended by A_0 = 0 and A_{-m} = -A_m."""
        m = np.asarray(m)
        vals = np.concatenate(([0.0], self.A))[np.abs(m)]
        return np.sign(m) * vals

    def E(self, i, j):
        """E_ij = int_0^1 t^th sin(pi i t) cos(pi j t) = (A_{i+j} + A_{i-j}) / 2."""
        return 0.5 * (self.A_signed(np.add(i, j)) + self.A_signed(np.subtract(i, j)))


def building_blocks(theta: float, basis_size: int, tol: float = 1e-9) -> BuildingBlocks:
    """Evaluate every one-dimensional integral the Galerkin entries need.

    Each integral is computed at two Gauss-Legendre orders; if they disagree
    by more than ``tol`` a :class:`QuadratureError` names the index.
    """
    theta = float(theta)
    N = int(basis_size)
    out = {name: np.empty(N) for name in "BCDFGH"}
    A = np.empty(2 * N)
    worst = 0.0

    def both(rules, f):
        nonlocal worst
        (x1, w1), (x2, w2) = rules
        v1 = float(np.dot(w1, f(x1)))
        v2 = float(np.dot(w2, f(x2)))
        err = abs(v1 - v2)
        worst = max(worst, err)
        return v2, err

    for k in range(1, 2 * N + 1):
        pk = math.pi * k
        val, err = both(_panels_2k(k, 0.0, 1.0), lambda t: t ** theta * np.sin(pk * t))
        if err > tol:
            raise QuadratureError(f"A_{k}: quadrature disagreement {err:.2e}")
        A[k - 1] = val
        if k > N:
            continue
        r01 = _panels_2k(k, 0.0, 1.0)
        r12 = _panels_2k(k, 1.0, 2.0)
        # ln t with t^theta is bounded by t^theta |ln t| -> 0, fine on graded panels
        blocks = {
            "B": (r12, lambda t: t ** theta * np.sin(pk * t)),
            "C": (r01, lambda t: t ** (theta + 1) * np.cos(pk * t)),
            "D": (r12, lambda t: t ** theta * (2.0 - t) * np.cos(pk * t)),
            "F": (r01, lambda t: kernel_K(t, 1.0, theta) * np.sin(pk * t)),
            "G": (r01, lambda t: t ** theta * np.log(t) * np.sin(pk * t)),
            "H": (r01, lambda t: kernel_K(t, 0.5, theta) * np.sin(pk * t)),
        }
        for name, (rules, f) in blocks.items():
            val, err = both(rules, f)
            if err > tol:
                raise QuadratureError(f"{name}_{k}: quadrature disagreement {err:.2e}")
            out[name][k - 1] = val
    return BuildingBlocks(theta, A, error_estimate=worst, **out)


def j_matrix(bb: BuildingBlocks, N: int) -> np.ndarray:
    """J_ij = int int (s + t)^theta sin(pi i s) sin(pi j t) from the closed forms."""
    idx = np.arange(1, N + 1, dtype=float)
    i, j = idx[:, None], idx[None, :]
    A, B = bb.A[:N], bb.B[:N]
    Ai, Aj = A[:, None], A[None, :]
    Bi, Bj = B[:, None], B[None, :]
    sign = np.where((np.add.outer(np.arange(N), np.arange(N)) % 2) == 0, 1.0, -1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        off = (i * Aj - j * Ai - sign * (i * Bj - j * Bi)) / (math.pi * (i * i - j * j))
    diag = (A - B) / (2 * math.pi * idx) - 0.5 * (bb.C[:N] + bb.D[:N])
    J = np.where(i == j, 0.0, off)
    J[np.diag_indices(N)] = diag
    return J


def q_matrix(config: KernelConfig, blocks: BuildingBlocks | None = None) -> np.ndarray:
    """Galerkin matrix of Khat in the (unnormalised) sine basis."""
    theta, N = config.theta, config.basis_size
    bb = blocks if blocks is not None else building_blocks(theta, N)
    k11 = float(kernel_K(1.0, 1.0, theta))
    lin, quad = khat_constants(theta)
    two_th = 2.0 ** theta

    ii = np.arange(1, N + 1)
    i, j = ii[:, None], ii[None, :]
    A, F, G, H = bb.A[:N], bb.F[:N], bb.G[:N], bb.H[:N]
    Ai, Aj = A[:, None], A[None, :]
    Fi, Fj = F[:, None], F[None, :]
    Gi, Gj = G[:, None], G[None, :]
    Hi, Hj = H[:, None], H[None, :]
    Eij = bb.E(i, j)
    Eji = bb.E(j, i)

    Q = (j_matrix(bb, N)
         - (Ai - Eij) / (math.pi * j) - (Aj - Eji) / (math.pi * i)
         - Ai * Fj - Aj * Fi + k11 * Ai * Aj
         - Gj * (Fi - two_th * Hi) / _LOG2
         - Gi * (Fj - two_th * Hj) / _LOG2
         + (Ai * Gj + Aj * Gi) * lin
         + Gi * Gj * quad)
    # exact symmetry; the closed forms agree to rounding
    return 0.5 * (Q + Q.T)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Kernel eigenvalues nu (descending) and Smirnov lambda = 1/nu (ascending)."""
    nu: np.ndarray
    lam: np.ndarray
    theta: float
    basis_size: int
    vectors: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def trace(self) -> float:
        return float(np.sum(self.nu))

    def eigenfunction(self, index: int, t):
        """index-th eigenfunction sum_i v_i sqrt(2) sin(pi i t)."""
        if self.vectors is None:
            raise ValueError("decomposition was computed without eigenvectors")
        t = np.asarray(t, dtype=float)
        i = np.arange(1, self.basis_size + 1)
        basis = np.sqrt(2.0) * np.sin(np.pi * np.multiply.outer(t, i))
        return basis @ self.vectors[:, index]


def eigen_decompose(Q: np.ndarray, theta: float, *, keep_vectors: bool = False,
                    nu_cutoff: float = NU_CUTOFF) -> SpectralDecomposition:
    """Eigenvalues of 2Q, descending; lambda from those above ``nu_cutoff``."""
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise ValueError("Q must be square")
    if not np.allclose(Q, Q.T, rtol=0, atol=1e-10 * max(1.0, np.abs(Q).max())):
        raise ValueError("Q must be symmetric")
    nu, vec = np.linalg.eigh(2.0 * Q)
    order = np.argsort(nu)[::-1]
    nu, vec = nu[order], vec[:, order]
    lam = 1.0 / nu[nu > nu_cutoff]
    return SpectralDecomposition(nu, lam, float(theta), Q.shape[0],
                                 vec if keep_vectors else None)


_cache_lock = threading.Lock()
_cache: dict = {}
_q_cache: dict = {}
_w_cache: dict = {}


def spectrum(theta: float, basis_size: int = DEFAULT_BASIS) -> SpectralDecomposition:
    """Cached spectrum of Khat; theta is rounded to 1e-6 before computing."""
    key = (round(float(theta), 6), int(basis_size))
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    config = KernelConfig(key[0], key[1])
    Q = q_matrix(config)
    dec = eigen_decompose(Q, key[0])
    with _cache_lock:
        _q_cache.setdefault(key, Q)
        return _cache.setdefault(key, dec)


def clear_spectrum_cache() -> None:
    with _cache_lock:
        _cache.clear()
        _q_cache.clear()
        _w_cache.clear()


def trace_integral(theta: float) -> float:
    """int_0^1 Khat(t, t) dt by adaptive quadrature."""
    from scipy.integrate import quad
    val, _ = quad(lambda t: float(kernel_Khat(t, t, theta)), 0.0, 1.0,
                  points=[0.5], limit=200, epsabs=1e-13, epsrel=1e-12)
    return val


def depoissonization_matrix(theta: float, basis_size: int = DEFAULT_BASIS,
                            blocks: BuildingBlocks | None = None) -> np.ndarray:
    """Sine-basis Galerkin matrix of the fixed-length correction to Khat.

    For a text of fixed length n the trajectory covariance is, to first order,
    K(s, t) - rho (s t)^(theta - 1) min(s, t) with rho = theta^2 E R_n / n.
    The correction is the covariance of X(t) = t^(theta - 1) W(t) for a
    Wiener process W; after the bridge map its projection on sin(pi i t) is
    int g_i dW with

        g_i(u) = Phi_i(u) - (A_i + G_i / ln 2) + 2 (G_i / ln 2) 1{u < 1/2},
        Phi_i(u) = int_u^1 t^(theta - 1) sin(pi i t) dt,

    so the matrix entries are int_0^1 g_i g_j du.
    """
    theta = float(theta)
    N = int(basis_size)
    bb = blocks if blocks is not None else building_blocks(theta, N)
    x, w = _gauss(_ORDER)
    # panels at multiples of 1/(2N), graded towards 0, always breaking at 1/2
    edges = np.arange(0, 2 * N + 1) / (2.0 * N)
    edges = np.concatenate(([0.0], edges[1] * _GRADE_RATIO ** np.arange(_GRADE_LEVELS, 0, -1),
                            edges[1:]))
    left, right = edges[:-1], edges[1:]
    half = 0.5 * (right - left)
    u = (half[:, None] * x + 0.5 * (left + right)[:, None])        # (P, m) nodes
    wu = half[:, None] * w
    k = np.pi * np.arange(1, N + 1)

    def f(t):
        return t[..., None] ** (theta - 1.0) * np.sin(t[..., None] * k)

    # integral of f over every panel, then over [left_p, u] inside the panel
    panel_tot = np.einsum("pm,pmi->pi", wu, f(u))
    sub_half = 0.5 * (u - left[:, None])                           # (P, m)
    sub_nodes = sub_half[..., None] * x + 0.5 * (u + left[:, None])[..., None]
    partial = np.einsum("pmr,pmri->pmi", sub_half[..., None] * w, f(sub_nodes))
    # Phi(u) = (rest of own panel) + (all panels to the right)
    right_tot = np.cumsum(panel_tot[::-1], axis=0)[::-1] - panel_tot
    phi = panel_tot[:, None, :] - partial + right_tot[:, None, :]

    A, G = bb.A[:N], bb.G[:N]
    g = phi - (A + G / _LOG2) + 2.0 * (G / _LOG2) * (u < 0.5)[..., None]
    g = g.reshape(-1, N)
    wf = wu.reshape(-1)
    QW = g.T @ (wf[:, None] * g)
    return 0.5 * (QW + QW.T)


def null_spectrum(theta: float, basis_size: int = DEFAULT_BASIS, *,
                  law: str = "asymptotic", rho: float = 0.0) -> SpectralDecomposition:
    """Spectrum defining the null distribution of omega^2.

    ``"asymptotic"`` is the kernel spectrum itself (eigenvalues of 2Q).
    ``"finite_sample"`` subtracts ``rho`` times the fixed-length correction
    (see :func:`depoissonization_matrix`); ``rho`` is theta^2 R_n / n.
    ``"unnormalized"`` takes the eigenvalues of Q, half the kernel spectrum.

    The corrected operator is only first-order accurate and can have a few
    small negative eigenvalues; like all eigenvalues below ``NU_CUTOFF`` they
    are left out, which projects it onto the positive semidefinite cone.
    """
    if law not in NULL_LAWS:
        raise ValueError(f"unknown null law {law!r}; expected one of {NULL_LAWS}")
    base = spectrum(theta, basis_size)
    if law == "asymptotic":
        return base
    if law == "unnormalized":
        nu = 0.5 * base.nu
        return SpectralDecomposition(nu, 1.0 / nu[nu > NU_CUTOFF], base.theta, base.basis_size)
    if not rho >= 0.0:
        raise ValueError("rho must be non-negative")
    key = (base.theta, base.basis_size)
    with _cache_lock:
        QW = _w_cache.get(key)
    if QW is None:
        QW = depoissonization_matrix(base.theta, base.basis_size)
        with _cache_lock:
            _w_cache.setdefault(key, QW)
    return eigen_decompose(_q_cache[key] - rho * QW, base.theta)
