"""Exact partial fractions of f(x/4)/f(x) for f(x) = x/(x+1) + x/(x+3).

Run from the repository root:  python demos/rational_quotient.py
"""
from fractions import Fraction

from logratio.ratfun import build_example_f, classification_report, partial_fractions, scaled_quotient

f = build_example_f()
q = scaled_quotient(f, Fraction(1, 4))
d = partial_fractions(q)
print("f(x/4)/f(x) =", d)
print("value at 0:", d(Fraction(0)))

# All three coefficients are negative and the poles sit at -2, -4, -12.
# A function c - sum a_k/(x + p_k) with a_k, p_k > 0 maps the upper
# half-plane into itself, which the numeric scan confirms.
rep = classification_report(d)
print("negative coefficient:", rep.negative_coefficient_flag)
print("min Im over the half-plane grid:", rep.numeric_pick_min_im)
print(rep.note)
