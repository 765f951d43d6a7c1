import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from zmgof.estimation import (AFunctional, TextTooShort, estimate_theta,
                              estimate_theta_general, half_split_functional)
from zmgof.occupancy import WordTrajectory, distinct_word_trajectory
from zmgof.simulate import SimConfig, sample_text
from zmgof.zm import ZMParams


def _traj(r):
    return WordTrajectory.from_counts(np.asarray(r))


def test_half_split_value():
    traj = distinct_word_trajectory("a b c d a e f a b g".split())
    est = estimate_theta(traj)
    assert est.raw == pytest.approx(math.log2(7 / 4))   # R_10 = 7, R_5 = 4
    assert not est.clamped and float(est) == est.value


def test_interpolated_half_index():
    traj = distinct_word_trajectory("a b c a d e f".split())   # n = 7, R = 6
    # R at (n+1)/2 = 4 is R_4 = 3; with floor, R_3 = 3 as well
    assert estimate_theta(traj, half_index="interpolated").raw == pytest.approx(1.0)
    traj = distinct_word_trajectory("a b c d e f".split())     # R at 3.5 -> 3.5
    assert estimate_theta(traj, half_index="interpolated").raw == pytest.approx(
        math.log2(6 / 3.5))
    with pytest.raises(ValueError):
        estimate_theta(traj, half_index="ceil")


def test_clamping():
    same = distinct_word_trajectory(["w"] * 40)
    est = estimate_theta(same)
    assert est.clamped and est.value == 0.05 and est.raw == 0.0
    distinct = distinct_word_trajectory([str(i) for i in range(40)])
    est = estimate_theta(distinct)
    assert est.clamped and est.value == 0.95 and est.raw == pytest.approx(1.0)


def test_too_short():
    with pytest.raises(TextTooShort):
        estimate_theta(distinct_word_trajectory(["one"]))


def test_functional_validation():
    half_split_functional().validate()
    with pytest.raises(ValueError):
        AFunctional(atoms=((0.5, -1.0), (1.0, 1.0))).validate()       # wrong scale
    with pytest.raises(ValueError):
        AFunctional(atoms=((0.5, -2.0), (1.0, 1 / math.log(2)))).validate()  # mass
    with pytest.raises(ValueError):
        AFunctional(atoms=((0.0, 1.0),)).validate()


def _linear_density():
    # a(t) = beta (t - 3/4) on [1/2, 1]: zero mass, scaled so int log t dA = 1
    J, _ = quad(lambda t: math.log(t) * (t - 0.75), 0.5, 1.0)
    return AFunctional(density=lambda t: (t - 0.75) / J)


def test_density_functional_is_valid_and_exact_on_powers():
    A = _linear_density()
    A.validate()
    for theta in (0.3, 0.7):
        # exact on g(t) = log(C t^theta)
        assert A.integrate(lambda t: np.log(3.0 * t ** theta), order=20) == pytest.approx(
            theta, abs=1e-10)


@given(st.lists(st.integers(0, 12), min_size=2, max_size=200))
def test_general_matches_half_split(tokens):
    traj = distinct_word_trajectory(tokens)
    if traj.r[traj.n // 2] < 1:
        return
    a = estimate_theta(traj)
    b = estimate_theta_general(traj, half_split_functional())
    assert b.raw == pytest.approx(a.raw, abs=1e-12)


@pytest.mark.parametrize("theta", [0.4, 0.8])
def test_estimators_consistent_on_model_text(theta):
    cfg = SimConfig(ZMParams.from_theta_q(theta, 2.0), n=200_000, seed=3)
    traj = distinct_word_trajectory(sample_text(cfg).tokens)
    assert estimate_theta(traj).value == pytest.approx(theta, abs=0.05)
    assert estimate_theta_general(traj, _linear_density()).value == pytest.approx(theta, abs=0.05)


def test_arithmetic_example():
    # n = 98 with R_49 = 44 and R_98 = 77
    r = np.zeros(99, dtype=int)
    r[1:45] = np.arange(1, 45)
    r[45:50] = 44
    r[50:] = np.minimum(44 + np.arange(1, 50), 77)
    traj = WordTrajectory.from_counts(r)
    assert traj.r[49] == 44 and traj.R_n == 77
    assert estimate_theta(traj).raw == pytest.approx(0.807355, abs=1e-6)


def test_all_distinct_even_length_caps():
    traj = WordTrajectory.from_counts(np.arange(0, 51))
    est = estimate_theta(traj)
    assert est.raw == 1.0 and est.value == 0.95 and est.clamped


def test_quarter_atom_functional():
    m = 1.0 / math.log(4.0)
    A = AFunctional(atoms=((0.25, -m), (1.0, m)))
    A.validate()
    cfg = SimConfig(ZMParams.from_theta_q(0.6, 1.0), n=10 ** 5, seed=12)
    traj = distinct_word_trajectory(sample_text(cfg).tokens)
    est = estimate_theta_general(traj, A)
    assert 0 < est.value < 1 and est.value == pytest.approx(0.6, abs=0.1)
    flat = WordTrajectory.from_counts([0] + [1] * 30)
    est = estimate_theta_general(flat, A)
    assert est.raw == 0.0 and est.value == 0.05 and est.clamped
