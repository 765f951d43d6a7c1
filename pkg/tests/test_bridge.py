import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from zmgof.bridge import (BridgePath, empirical_bridge, empirical_text_bridge, omega_square,
                          segment_integral)
from zmgof.occupancy import distinct_word_trajectory
from zmgof.zm import ZMParams, expected_distinct


@given(st.lists(st.floats(-5, 5), min_size=1, max_size=60))
def test_closed_form_matches_segment_integration(inner):
    a = np.concatenate(([0.0], inner, [0.0]))
    assert omega_square(BridgePath(a, "x")) == pytest.approx(segment_integral(a), abs=1e-12)


def test_omega_square_against_quadrature():
    a = np.array([0.0, 1.0, -2.0, 0.5, 0.0])
    path = BridgePath(a, "x")
    ref, _ = quad(lambda t: path(t) ** 2, 0, 1, points=[0.25, 0.5, 0.75])
    assert omega_square(path) == pytest.approx(ref, rel=1e-12)
    with pytest.raises(ValueError):
        omega_square(BridgePath(np.zeros(2), "x"))


def test_empirical_bridge_pinned():
    traj = distinct_word_trajectory("a b c a d b e f g a".split())
    path = empirical_bridge(traj, 0.7)
    assert path.values[0] == 0 and path.values[-1] == 0
    k = 4
    expect = (traj.r[k] - (k / 10) ** 0.7 * traj.R_n) / np.sqrt(traj.R_n)
    assert path.values[k] == pytest.approx(expect)
    np.testing.assert_allclose(path.t, np.arange(11) / 10)


def test_text_bridge_definition():
    traj = distinct_word_trajectory("a b c a d b e f g a".split())
    params = ZMParams.from_theta_q(0.8, 1.5)
    path = empirical_text_bridge(traj, params)
    r = expected_distinct(params, np.arange(11))
    np.testing.assert_allclose(path.values, (traj.r - r) / np.sqrt(traj.R_n))
    assert path.values[0] == 0.0 and path.kind == "z_tilde"


def test_hand_examples():
    from zmgof.occupancy import WordTrajectory
    traj = WordTrajectory.from_counts([0, 1, 2, 2])
    assert empirical_bridge(traj, 1.0).values[1] == pytest.approx((1 - 2 / 3) / np.sqrt(2))
    assert empirical_bridge(traj, 1.0).values[1] == pytest.approx(0.2357, abs=1e-4)
    distinct = WordTrajectory.from_counts(np.arange(0, 21))
    np.testing.assert_allclose(empirical_bridge(distinct, 1.0).values, 0.0, atol=1e-15)
    assert omega_square(BridgePath(np.zeros(9), "x")) == 0.0
    assert omega_square(BridgePath(np.array([0.0, 1.0, 0.0]), "x")) == pytest.approx(1 / 3)


def test_random_path_against_fine_grid():
    rng = np.random.default_rng(50)
    a = np.concatenate(([0.0], rng.normal(size=49), [0.0]))
    path = BridgePath(a, "x")
    # composite Simpson with every knot on the grid is exact for the squared interpolant
    t = np.linspace(0, 1, 50 * 2 * 20 + 1)
    y = path(t) ** 2
    h = t[1] - t[0]
    simpson = h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())
    assert omega_square(path) == pytest.approx(simpson, abs=1e-10)


def test_text_bridge_endpoint_after_fit():
    from zmgof.estimation import estimate_theta
    from zmgof.zm import fit_shift
    traj = distinct_word_trajectory(("to be or not to be that is the question whether tis "
                                     "nobler in the mind to suffer the slings and arrows of "
                                     "outrageous fortune or to take arms against a sea of "
                                     "troubles").split())
    theta = estimate_theta(traj).value
    params = ZMParams.from_theta_q(theta, fit_shift(theta, traj.n, traj.R_n))
    path = empirical_text_bridge(traj, params)
    assert abs(path.values[-1]) < 0.01 / np.sqrt(traj.R_n)
