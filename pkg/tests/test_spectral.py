import mpmath
import numpy as np
import pytest
from scipy.integrate import quad

from oracles import galerkin_2d
from zmgof.kernels import kernel_Khat
from zmgof.spectral import (BuildingBlocks, KernelConfig, QuadratureError, building_blocks,
                            depoissonization_matrix, eigen_decompose, j_matrix, null_spectrum,
                            q_matrix, spectrum, trace_integral)


@pytest.fixture(scope="module")
def blocks08():
    return building_blocks(0.8, 12)


def test_building_blocks_against_mpmath(blocks08):
    th = mpmath.mpf("0.8")
    for k in (1, 5, 12):
        w = mpmath.pi * k
        z01 = mpmath.linspace(0, 1, 2 * k + 1)
        z12 = mpmath.linspace(1, 2, 2 * k + 1)
        ref = {
            "A": mpmath.quad(lambda t: t ** th * mpmath.sin(w * t), z01),
            "B": mpmath.quad(lambda t: t ** th * mpmath.sin(w * t), z12),
            "C": mpmath.quad(lambda t: t ** (th + 1) * mpmath.cos(w * t), z01),
            "D": mpmath.quad(lambda t: t ** th * (2 - t) * mpmath.cos(w * t), z12),
            "G": mpmath.quad(lambda t: t ** th * mpmath.log(t) * mpmath.sin(w * t), z01),
        }
        for name, val in ref.items():
            val = float(val)
            assert getattr(blocks08, name)[k - 1] == pytest.approx(val, abs=1e-11), (name, k)


def test_E_identity(blocks08):
    i, j = 3, 7
    ref = quad(lambda t: 0.8 ** 0 * t ** 0.8 * np.sin(np.pi * i * t) * np.cos(np.pi * j * t),
               0, 1, limit=200)[0]
    assert blocks08.E(i, j) == pytest.approx(ref, abs=1e-11)
    assert blocks08.A_signed(0) == 0 and blocks08.A_signed(-2) == -blocks08.A[1]


def test_j_matrix_against_2d_quadrature(blocks08):
    J = j_matrix(blocks08, 6)
    ref = galerkin_2d(lambda s, t: (s + t) ** 0.8, 6)
    np.testing.assert_allclose(J, ref, atol=1e-10)


@pytest.mark.parametrize("theta", [0.3, 0.5, 0.8])
def test_q_matrix_against_2d_quadrature(theta):
    Q = q_matrix(KernelConfig(theta, 8))
    ref = galerkin_2d(lambda s, t: kernel_Khat(s, t, theta), 8)
    assert np.abs(Q - ref).max() < 1e-9


def test_quadrature_self_check_raises():
    with pytest.raises(QuadratureError):
        building_blocks(0.5, 4, tol=1e-30)


def test_config_validation():
    with pytest.raises(ValueError):
        KernelConfig(1.0)
    with pytest.raises(ValueError):
        KernelConfig(0.5, 0)


@pytest.mark.parametrize("theta", [0.3, 0.5, 0.8])
def test_trace_and_positivity(theta):
    spec = spectrum(theta)
    tr = trace_integral(theta)
    assert abs(spec.trace - tr) <= 0.02 * tr
    assert np.all(spec.nu > -1e-10)
    assert np.all(np.diff(spec.nu) <= 0) and np.all(np.diff(spec.lam) > 0)


def test_galerkin_convergence():
    a = spectrum(0.6, 100).nu[:5]
    b = eigen_decompose(q_matrix(KernelConfig(0.6, 140)), 0.6).nu[:5]
    np.testing.assert_allclose(a, b, rtol=1e-3)


def test_mercer_expansion():
    Q = q_matrix(KernelConfig(0.5, 100))
    dec = eigen_decompose(Q, 0.5, keep_vectors=True)
    t = np.array([0.2, 0.4, 0.7])
    phi = np.stack([dec.eigenfunction(k, t) for k in range(40)])
    approx = (dec.nu[:40, None] * phi ** 2).sum(axis=0)
    np.testing.assert_allclose(approx, kernel_Khat(t, t, 0.5), rtol=0.05)


def test_eigen_decompose_validation():
    with pytest.raises(ValueError):
        eigen_decompose(np.ones((2, 3)), 0.5)
    with pytest.raises(ValueError):
        eigen_decompose(np.array([[1.0, 2.0], [0.0, 1.0]]), 0.5)
    dec = eigen_decompose(np.diag([0.5, 0.0, 1e-12]), 0.5)
    np.testing.assert_allclose(dec.lam, [1.0])
    with pytest.raises(ValueError):
        dec.eigenfunction(0, 0.3)


def test_spectrum_cache_rounds_theta():
    assert spectrum(0.7000001) is spectrum(0.7)


def _correction_trace(theta):
    """int_0^1 Var(L X(t)) dt for X(t) = t^(theta-1) W(t), by direct integration."""
    L = np.log(2.0)

    def var(t):
        c0 = -t ** theta * (1 + np.log(t) / L)
        c1 = 2 * t ** theta * np.log(t) / L
        a = t ** (theta - 1)
        cuts = sorted({0.0, t, 0.5, 1.0})
        total = 0.0
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            m = 0.5 * (lo + hi)
            total += (a * (m < t) + c0 + c1 * (m < 0.5)) ** 2 * (hi - lo)
        return total

    return quad(var, 0, 1, points=[0.5], limit=200)[0]


@pytest.mark.parametrize("theta", [0.5, 0.8])
def test_depoissonization_trace(theta):
    W = depoissonization_matrix(theta, 100)
    assert 2 * np.trace(W) == pytest.approx(_correction_trace(theta), rel=0.02)
    assert np.linalg.eigvalsh(W).min() > -1e-10


def test_null_laws():
    base = spectrum(0.6)
    assert null_spectrum(0.6, law="asymptotic") is base
    half = null_spectrum(0.6, law="unnormalized")
    np.testing.assert_allclose(half.nu, 0.5 * base.nu)
    same = null_spectrum(0.6, law="finite_sample", rho=0.0)
    np.testing.assert_allclose(same.nu, base.nu, atol=1e-14)
    shrunk = null_spectrum(0.6, law="finite_sample", rho=0.2)
    assert shrunk.trace < base.trace
    with pytest.raises(ValueError):
        null_spectrum(0.6, law="bogus")
    with pytest.raises(ValueError):
        null_spectrum(0.6, law="finite_sample", rho=-1.0)


def test_first_block_against_adaptive_quadrature():
    bb = building_blocks(0.5, 2)
    ref = quad(lambda t: np.sqrt(t) * np.sin(np.pi * t), 0, 1, epsabs=1e-13)[0]
    assert bb.A[0] == pytest.approx(ref, abs=1e-9)


def test_identity_matrix_factor():
    dec = eigen_decompose(np.eye(4), 0.5)
    np.testing.assert_allclose(dec.nu, 2.0)
    np.testing.assert_allclose(dec.lam, 0.5)
