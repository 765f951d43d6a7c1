"""Eigenvalues of the bridge covariance and the null CDF of omega^2."""
import numpy as np

from zmgof import cdf_w2, spectrum
from zmgof.simulate import mc_quadratic_form
from zmgof.spectral import trace_integral

for theta in (0.3, 0.5, 0.8):
    spec = spectrum(theta)
    print(f"theta={theta}: top nu {np.round(spec.nu[:4], 5)}  sum {spec.trace:.5f}"
          f"  trace integral {trace_integral(theta):.5f}")

spec = spectrum(0.8)
mc = mc_quadratic_form(spec, 100_000, seed=0)
print("\n    x     Smirnov   Monte-Carlo")
for x in np.quantile(mc.samples, [0.1, 0.5, 0.9, 0.99]):
    print(f"{x:8.4f}  {cdf_w2(spec, x):.4f}    {mc(x):.4f}")
