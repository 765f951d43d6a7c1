"""Rebuild the reference sonnet table and compare row by row."""
import numpy as np

from zmgof import analyze_text
from zmgof.corpus import REFERENCE_CONFIG, reference_input, reference_table

rows = reference_table()
same, diffs = [], []
for row in rows:
    r = analyze_text(reference_input(row.number), REFERENCE_CONFIG, row.label)
    if (r.n, r.R_n) == (row.n, row.R_n):
        same.append(row.label)
        diffs.append((r.theta_hat - row.theta_hat, r.q_hat - row.q_hat,
                      r.omega2 - row.omega2, r.p_value - row.p_value))

diffs = np.abs(np.array(diffs))
print(f"{len(same)} of {len(rows)} sonnets give the reference n and R_n")
for name, col in zip(("theta", "q", "omega2", "p"), diffs.T):
    print(f"  max |diff| {name:7s} {col.max():.2e}")

# how many of the reference rows would be rejected at 5 percent
pub = np.array([row.p_value for row in rows])
print("reference p < 0.05:", int(np.sum(pub < 0.05)), "of", len(pub))
