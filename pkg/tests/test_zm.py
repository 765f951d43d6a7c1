import math

import mpmath
import numpy as np
import pytest
from scipy.special import comb, gamma, zeta

from zmgof.zm import (SHIFT_BRACKET, SHIFT_ITERATIONS, ShiftOutOfRange, ZMParams,
                      expected_distinct, fit_shift, heaps_approximation, zm_probability)


def test_known_zeta_values():
    from zmgof.special import hurwitz_zeta
    assert hurwitz_zeta(2.0, 1.0) == pytest.approx(math.pi ** 2 / 6, rel=1e-13)
    assert hurwitz_zeta(2.0, 2.0) == pytest.approx(math.pi ** 2 / 6 - 1, rel=1e-13)
    assert hurwitz_zeta(3.0, 1.0) == pytest.approx(1.2020569031595942, rel=1e-13)


def test_incomplete_gamma_examples():
    from zmgof.special import lower_incomplete_gamma
    # substituting z = w^2 removes the endpoint singularity
    ref = float(mpmath.quad(lambda w: 2 * mpmath.exp(-w * w), [0, 1]))
    assert lower_incomplete_gamma(0.5, 1.0) == pytest.approx(ref, rel=1e-12)
    assert lower_incomplete_gamma(0.5, 40.0) == pytest.approx(math.sqrt(math.pi), abs=1e-12)


def test_params_invariants():
    for theta in (0.3, 0.5, 0.8):
        for q in (-0.5, 0.0, 5.0):
            p = ZMParams.from_theta_q(theta, q)
            assert p.alpha * p.theta == pytest.approx(1.0, abs=1e-15)
            assert p.c == pytest.approx(1.0 / float(mpmath.zeta(1 / theta, q + 1)), rel=1e-12)
            # explicit partial sum, then the remainder from an independent zeta
            head = math.fsum(p.c * (np.arange(1, 100_001) + q) ** -p.alpha)
            rest = p.c * float(mpmath.zeta(p.alpha, 100_001 + q))
            assert head + rest == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValueError):
        ZMParams.from_theta_q(1.0, 0.0)
    with pytest.raises(ValueError):
        ZMParams.from_theta_q(0.5, -1.0)


def test_probabilities():
    p = ZMParams.from_theta_q(0.5, 0.0)
    assert zm_probability(p, 1) == pytest.approx(6 / math.pi ** 2, rel=1e-13)
    assert zm_probability(p, 2) / zm_probability(p, 1) == pytest.approx(0.25, rel=1e-14)
    p1 = ZMParams.from_theta_q(0.5, 1.0)
    assert zm_probability(p1, 1) == pytest.approx(0.25 / (math.pi ** 2 / 6 - 1), rel=1e-12)
    assert np.all(np.diff(zm_probability(p1, np.arange(1, 100))) < 0)


def _brute_r(params, k, ranks=10 ** 7, tail_terms=6):
    """Exact finite sum over the first ``ranks`` words plus a power-sum tail."""
    head = 0.0
    for lo in range(1, ranks + 1, 2_000_000):
        i = np.arange(lo, min(lo + 2_000_000, ranks + 1), dtype=float)
        head += float(-np.expm1(k * np.log1p(-zm_probability(params, i))).sum())
    # sum_{i > ranks} 1 - (1-p)^k = sum_j (-1)^(j+1) C(k, j) sum p^j
    x = ranks + 1 + params.q
    tail = sum((-1) ** (j + 1) * comb(k, j) * params.c ** j * zeta(j * params.alpha, x)
               for j in range(1, tail_terms + 1))
    return head + tail


@pytest.mark.slow
@pytest.mark.parametrize("theta,q", [(0.3, 0.0), (0.5, 5.0), (0.8, 3.0)])
def test_expected_distinct_vs_brute_force(theta, q):
    p = ZMParams.from_theta_q(theta, q)
    for k in (10, 300, 10_000):
        assert expected_distinct(p, k) == pytest.approx(_brute_r(p, k), rel=1e-4)


def test_expected_distinct_small_k():
    p = ZMParams.from_theta_q(0.5, 0.0)
    assert expected_distinct(p, 0) == 0.0
    assert expected_distinct(p, 1) == pytest.approx(1.0, abs=1e-8)
    # for heavier tails the Poisson tail misses about sum_{i>M} p_i^2 / 2 at k = 1
    for theta, q in ((0.8, 3.0), (0.95, 0.0)):
        p = ZMParams.from_theta_q(theta, q)
        bound = p.c ** 2 * zeta(2 * p.alpha, 1001 + q)
        assert abs(expected_distinct(p, 1) - 1.0) <= bound


@pytest.mark.parametrize("theta", [0.3, 0.5, 0.8])
@pytest.mark.parametrize("q", [-0.5, 0.0, 5.0, 20.0])
def test_expected_distinct_monotone_concave(theta, q):
    p = ZMParams.from_theta_q(theta, q)
    k = np.arange(0, 3001)
    r = expected_distinct(p, k)
    d = np.diff(r)
    assert np.all(d >= -1e-12)
    assert np.all(np.diff(d) <= 1e-10)


def test_expected_distinct_large_k_finite():
    p = ZMParams.from_theta_q(0.5, 0.0)
    r = expected_distinct(p, [10 ** 6, 10 ** 7])
    assert np.all(np.isfinite(r)) and r[1] > r[0]


def test_heaps_bound():
    p = ZMParams.from_theta_q(0.8, 3.0)
    n = 10_000
    lead = (p.c * n) ** 0.8 * gamma(0.2) - 3.0
    assert abs(expected_distinct(p, n) - lead) < 2
    assert heaps_approximation(p, n) == pytest.approx(lead, rel=1e-12)


def test_fit_shift_reference_row():
    assert fit_shift(0.7911, 98, 77) == pytest.approx(5.1473, abs=0.02)


def test_fit_shift_round_trip():
    p = ZMParams.from_theta_q(0.8, 5.0)
    n = 5000
    R = round(float(expected_distinct(p, n)))
    assert fit_shift(0.8, n, R) == pytest.approx(5.0, abs=0.15)


def test_fit_shift_bracket_and_residual():
    q = fit_shift(0.7, 400, 220)
    width = (SHIFT_BRACKET[1] - SHIFT_BRACKET[0]) / 2 ** SHIFT_ITERATIONS
    assert width == pytest.approx(3.9e-5, rel=0.01)
    lo, hi = q - width / 2, q + width / 2
    r_lo = expected_distinct(ZMParams.from_theta_q(0.7, lo), 400)
    r_hi = expected_distinct(ZMParams.from_theta_q(0.7, hi), 400)
    assert min(r_lo, r_hi) - 1e-9 <= 220 <= max(r_lo, r_hi) + 1e-9


def test_fit_shift_out_of_range():
    with pytest.raises(ShiftOutOfRange) as info:
        fit_shift(0.3, 1000, 999)
    assert info.value.residual_low * info.value.residual_high > 0
    try:
        q = fit_shift(0.95, 200, 200)
    except ShiftOutOfRange:
        pass
    else:
        assert math.isfinite(q)
