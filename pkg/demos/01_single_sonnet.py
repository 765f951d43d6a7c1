"""Walk through the test on one sonnet, step by step."""
import numpy as np

from zmgof import (AnalysisConfig, ZMParams, distinct_word_trajectory, empirical_text_bridge,
                   estimate_theta, fit_shift, null_spectrum, omega_square, p_value, tokenize)
from zmgof.corpus import load_sonnet

text = load_sonnet(18)
print(text)

seq = tokenize(text)
traj = distinct_word_trajectory(seq.tokens)
print("tokens", traj.n, "distinct", traj.R_n)
print("first counts", traj.r[:15])

# theta from the half-split: log2(R_n / R_[n/2])
est = estimate_theta(traj)
print("theta_hat", round(est.value, 4), "clamped" if est.clamped else "")

# shift q by bisection on r(n) = R_n
q_hat = fit_shift(est.value, traj.n, traj.R_n)
params = ZMParams.from_theta_q(est.value, q_hat)
print("q_hat", round(q_hat, 4), "c", round(params.c, 5))

path = empirical_text_bridge(traj, params)
w2 = omega_square(path)
print("largest |bridge| %.3f at k=%d" % (np.abs(path.values).max(), np.abs(path.values).argmax()))
print("omega^2", round(w2, 5))

# the null law depends on theta and, at finite length, on R_n / n
rho = est.value ** 2 * traj.R_n / traj.n
for law in ("asymptotic", "finite_sample", "unnormalized"):
    spec = null_spectrum(est.value, law=law, rho=rho)
    print(f"p-value ({law})", round(p_value(spec, w2), 4))

print("default law:", AnalysisConfig().null_law)
