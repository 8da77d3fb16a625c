"""Tour of the spectral densities of f_r(x) = log(1 + r x) / log(1 + x).

Run from the repository root:  python demos/densities.py
"""
import numpy as np

from logratio import density_spec, sigma, tsigma
from logratio.analysis import find_r0, monotonicity_scan, tbf_witness

# For 0 < r < 1, sigma_r lives on (1, inf) with a log blow-up at t = 1/r.
r = 0.5
t = np.array([1.001, 1.5, 1.99, 2.01, 3.0, 10.0, 1e3, 1e6])
print("sigma_0.5 at", t)
print("   ", sigma(r, t))

# The tail is heavy: the mass beyond T only falls off like 1/log T.
spec = density_spec("sigma", r)
print("knots:", spec.knots, " pieces:", spec.pieces())

# sigma_r is monotone on (1, 1/r) only for r past a transition near 0.1.
for r_ in (0.05, 0.2):
    s = density_spec("sigma", r_)
    w = 1e-6 * (1 / r_ - 1)
    rep = monotonicity_scan(s, 1 + w, 1 / r_ - w, 4000)
    print(f"r={r_}: monotone on (1, 1/r)? {rep.monotone}  sign changes at {rep.sign_changes}")
print("transition estimate r0 =", find_r0())

# t sigma_r is increasing on (1, 1/r) but falls off beyond 1/r, so it is
# not increasing on the whole half line.
w = tbf_witness(0.5)
print(f"t sigma_0.5({w.t_lo:.3g}) = {w.v_lo:.4f} > t sigma_0.5({w.t_hi:.3g}) = {w.v_hi:.4f}")
print("check:", float(tsigma(0.5, w.t_lo)) > float(tsigma(0.5, w.t_hi)))
