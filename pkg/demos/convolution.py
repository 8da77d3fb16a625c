"""The reciprocity f_r(x) f_{1/r}(r x) = 1 seen on the Laplace side.

Run from the repository root:  python demos/convolution.py
"""
from logratio.laplace_conv import convolution_residual, g_fn, h_fn, laplace_of_g, reciprocity_residual
from logratio import f_direct

r = 0.5
print("reciprocity residual at x = 3:", reciprocity_residual(r, 3.0))

# g_r is bounded between r and 1; h_r blows up (slowly) at 0.
for s in (1e-6, 1e-2, 1.0, 10.0):
    print(f"s={s:g}: g = {g_fn(r, s).value:.12f}  h = {h_fn(r, s).value:.6e}")

# g + g * h = 1 on (0, inf)
for x in (0.1, 1.0, 5.0):
    c = convolution_residual(r, x)
    print(f"x={x}: residual {c.residual:+.2e} (estimate {c.err_est:.1e})")

# and the Laplace transform of g gives back f_r(y)/y
y = 2.0
print("L g(2) =", laplace_of_g(r, y).value, " f(2)/2 =", f_direct(r, y).real / y)
