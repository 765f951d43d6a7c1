"""Are p-values uniform when the text really is Zipf-Mandelbrot?

Simulated texts are run through the full test. Three candidate null laws are
compared on the same replications: the limiting kernel spectrum, the
fixed-length correction of it, and half the kernel spectrum.
"""
import sys

import numpy as np
from scipy.stats import kstest

from zmgof import AnalysisConfig, ZMParams, null_spectrum, p_value
from zmgof.simulate import SimConfig, null_pvalue_experiment

reps = int(sys.argv[1]) if len(sys.argv) > 1 else 100
params = ZMParams.from_theta_q(0.8, 3.0)

for n in (100, 2000):
    cfg = SimConfig(params, n, reps, seed=1)
    rows = [r for r in null_pvalue_experiment(cfg, AnalysisConfig(), workers=4) if r.ok]
    print(f"n={n}, {len(rows)} fitted texts")
    for law in ("asymptotic", "finite_sample", "unnormalized"):
        p = np.array([p_value(null_spectrum(r.theta_hat, law=law,
                                            rho=r.theta_hat ** 2 * r.R_n / r.n), r.omega2)
                      for r in rows])
        ks = kstest(p, "uniform")
        print(f"  {law:14s} median {np.median(p):.3f}  reject@5% {np.mean(p < 0.05):.3f}"
              f"  KS p {ks.pvalue:.2g}")
