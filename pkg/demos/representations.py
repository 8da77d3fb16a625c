"""Integral representations of f_r checked against direct evaluation.

Run from the repository root:  python demos/representations.py
"""
from logratio import alpha, eval_bernstein_rep, eval_pick_rep, eval_rep, f_direct, mass_identities

# Total masses of the representing densities.
for r in (0.3, 2.5):
    m = mass_identities(r)
    for k in m.computed:
        print(f"r={r}: {k:16s} computed {m.computed[k]:.15f}  target {m.targets[k]:.15f}")

# One point, several representations.
z = -0.5 + 0.75j
r = 0.3
print("\nf_0.3 at", z)
print("  direct     ", f_direct(r, z))
print("  cbf form   ", eval_rep(r, z).value)
print("  pick form  ", eval_pick_rep(r, z).value, " (alpha =", alpha(r), ")")

# Super-unit r: a Stieltjes function, decreasing on the positive axis.
for x in (0.1, 1.0, 10.0):
    print(f"f_2.5({x}) direct {f_direct(2.5, x).real:.15f}  stieltjes {eval_rep(2.5, x).value.real:.15f}")

# The Levy-density form is a nested integral; still accurate to ~1e-15 here.
for x in (0.1, 1.0, 10.0):
    print(f"bernstein form at {x}: {eval_bernstein_rep(0.5, x).value:.15f} vs {f_direct(0.5, x).real:.15f}")
