"""Exact rational functions and partial fractions over Q.

Polynomials are tuples of ``Fraction`` coefficients in ascending degree.
Used for the scaled-quotient counterexample f(x/4)/f(x) with
f(x) = x/(x+1) + x/(x+3).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

__all__ = [
    "Poly",
    "RationalFn",
    "PFDecomp",
    "ClassificationReport",
    "UnsupportedInput",
    "build_example_f",
    "scaled_quotient",
    "partial_fractions",
    "classification_report",
    "rational_roots",
    "DISCREPANCY_NOTE",
]


class UnsupportedInput(ValueError):
    """Repeated or irrational poles, or a numerator of too high degree."""


def _trim(c):
    c = [Fraction(v) for v in c]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (Fraction(0),)


class Poly(tuple):
    """Polynomial with exact rational coefficients, lowest degree first."""

    def __new__(cls, coeffs=(0,)):
        return super().__new__(cls, _trim(coeffs))

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls([lead])
        for rt in roots:
            p = p * cls([-Fraction(rt), 1])
        return p

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self) - 1

    def is_zero(self) -> bool:
        return len(self) == 1 and self[0] == 0

    @property
    def lead(self) -> Fraction:
        return self[-1]

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self):
            acc = acc * x + (c if isinstance(acc, Fraction) else float(c))
        return acc

    def __add__(self, other):
        n = max(len(self), len(other))
        a = list(self) + [Fraction(0)] * (n - len(self))
        b = list(other) + [Fraction(0)] * (n - len(other))
        return Poly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return Poly([-c for c in self])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([c * Fraction(other) for c in self])
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self):
            for j, b in enumerate(other):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return tuple.__eq__(self, Poly(other))

    def __hash__(self):
        return tuple.__hash__(self)

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self)
        q = [Fraction(0)] * max(1, len(self) - len(other) + 1)
        while len(rem) >= len(other) and any(rem):
            shift = len(rem) - len(other)
            c = rem[-1] / other.lead
            q[shift] = c
            for i, b in enumerate(other):
                rem[i + shift] -= c * b
            rem.pop()
        return Poly(q), Poly(rem or [0])

    __divmod__ = divmod

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self)][1:] or [0])

    def monic(self) -> "Poly":
        return self * (1 / self.lead)

    def compose_scale(self, c) -> "Poly":
        """p(c x)."""
        c = Fraction(c)
        return Poly([a * c ** i for i, a in enumerate(self)])

    def __repr__(self):
        return "Poly(" + ", ".join(str(c) for c in self) + ")"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def _divisors(n: int):
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def rational_roots(p: Poly) -> list[Fraction]:
    """All distinct rational roots, by the rational root theorem."""
    if p.is_zero():
        raise ValueError("zero polynomial has every number as a root")
    den = math.lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    roots = set()
    k = 0
    while ints[k] == 0:
        roots.add(Fraction(0))
        k += 1
    ints = ints[k:]
    if len(ints) > 1:
        for num, dn in product(_divisors(ints[0]), _divisors(ints[-1])):
            for cand in (Fraction(num, dn), Fraction(-num, dn)):
                if p(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


@dataclass(frozen=True)
class RationalFn:
    """numerator / denominator, reduced, with a monic denominator."""

    numerator: Poly
    denominator: Poly

    def __post_init__(self):
        num, den = Poly(self.numerator), Poly(self.denominator)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den) if not num.is_zero() else den.monic()
        num, den = num.divmod(g)[0], den.divmod(g)[0]
        scale = 1 / den.lead
        object.__setattr__(self, "numerator", num * scale)
        object.__setattr__(self, "denominator", den * scale)

    def __call__(self, x):
        return self.numerator(x) / self.denominator(x)

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.numerator * other.denominator + other.numerator * self.denominator,
                          self.denominator * other.denominator)

    def __truediv__(self, other: "RationalFn") -> "RationalFn":
        if other.numerator.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFn(self.numerator * other.denominator, self.denominator * other.numerator)

    def scale_argument(self, c) -> "RationalFn":
        return RationalFn(self.numerator.compose_scale(c), self.denominator.compose_scale(c))

    def is_constant(self) -> bool:
        return self.numerator.degree <= 0 and self.denominator.degree == 0

    def numerator_roots(self):
        return rational_roots(self.numerator)

    def denominator_roots(self):
        return rational_roots(self.denominator)


def build_example_f() -> RationalFn:
    """x/(x+1) + x/(x+3) = 2x(x+2)/((x+1)(x+3))."""
    x = Poly([0, 1])
    return RationalFn(x, Poly([1, 1])) + RationalFn(x, Poly([3, 1]))


def scaled_quotient(f: RationalFn, c) -> RationalFn:
    """The reduced rational function f(c x)/f(x) for 0 < c <= 1."""
    c = Fraction(c)
    if not 0 < c <= 1:
        raise ValueError("c must lie in (0, 1]")
    if f.numerator.is_zero():
        raise ZeroDivisionError("f is identically zero")
    return f.scale_argument(c) / f


@dataclass(frozen=True)
class PFDecomp:
    """constant + sum(coeff / (x + pole)) with exact rationals."""

    constant: Fraction
    terms: tuple  # ((pole, coeff), ...), sorted by pole

    def to_rational(self) -> RationalFn:
        out = RationalFn(Poly([self.constant]), Poly([1]))
        for pole, coeff in self.terms:
            out = out + RationalFn(Poly([coeff]), Poly([pole, 1]))
        return out

    def __call__(self, x):
        return self.constant + sum(c / (x + p) for p, c in self.terms)

    def __str__(self):
        parts = [str(self.constant)]
        for pole, coeff in self.terms:
            sign = "-" if coeff < 0 else "+"
            parts.append(f"{sign} ({abs(coeff)})/(x + {pole})")
        return " ".join(parts)


def partial_fractions(g: RationalFn) -> PFDecomp:
    """Exact decomposition for distinct rational poles and deg num <= deg den."""
    num, den = g.numerator, g.denominator
    if num.degree > den.degree:
        raise UnsupportedInput("numerator degree exceeds denominator degree")
    roots = rational_roots(den)
    if len(roots) != den.degree:
        raise UnsupportedInput("denominator must split into distinct rational linear factors")
    constant = num.lead / den.lead if num.degree == den.degree else Fraction(0)
    d1 = den.derivative()
    terms = tuple(sorted((-rt, num(rt) / d1(rt)) for rt in roots))
    return PFDecomp(constant, terms)


DISCREPANCY_NOTE = (
    "Sign data alone does not settle complete Bernstein membership: x/(x+1) = 1 - 1/(x+1) "
    "is complete Bernstein yet has a negative coefficient in this form. A function "
    "c - sum a_k/(x+p_k) with a_k > 0, p_k > 0 has Im g > 0 on the upper half-plane; "
    "compare numeric_pick_min_im and value_at_zero before drawing a conclusion."
)


@dataclass(frozen=True)
class ClassificationReport:
    all_coeffs_nonneg: bool
    all_coeffs_nonpos: bool
    poles_all_positive: bool
    value_at_zero: Fraction | None
    negative_coefficient_flag: bool
    numeric_pick_min_im: float
    note: str = DISCREPANCY_NOTE


def classification_report(d: PFDecomp, grid=None) -> ClassificationReport:
    """Evidence about d: coefficient signs, pole positions, value at 0 and a
    half-plane scan of Im d(z). No verdict is synthesised."""
    from .pickcheck import default_grid

    coeffs = [c for _, c in d.terms]
    poles = [p for p, _ in d.terms]
    z = (grid or default_grid()).points()
    vals = np.full(z.shape, complex(float(d.constant)))
    for p, c in d.terms:
        vals += float(c) / (z + float(p))
    value0 = None if any(p == 0 for p in poles) else d(Fraction(0))
    return ClassificationReport(
        all_coeffs_nonneg=all(c >= 0 for c in coeffs),
        all_coeffs_nonpos=all(c <= 0 for c in coeffs),
        poles_all_positive=all(p > 0 for p in poles),
        value_at_zero=value0,
        negative_coefficient_flag=any(c < 0 for c in coeffs),
        numeric_pick_min_im=float(np.min(vals.imag)),
    )
