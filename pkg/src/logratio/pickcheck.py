"""Numerical checks of the Pick-function structure of f_r.

Sign scans of Im f_r over the upper half-plane, recovery of the boundary
density as y -> 0+, the point-mass criterion y Im f(a+iy) -> mu({a}),
the linear coefficient beta, and Poisson smoothing P_y * g.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cutplane import DomainError, Regime, as_param, f_direct, im_f_closed
from .densities import omega, phi
from .quadrature import QuadConfig, integrate_finite

__all__ = [
    "ScanGrid",
    "ScanResult",
    "default_grid",
    "halfplane_scan",
    "boundary_density_error",
    "point_mass_probe",
    "beta_probe",
    "poisson_smooth",
]


@dataclass(frozen=True)
class ScanGrid:
    re_points: tuple
    im_points: tuple

    def __post_init__(self):
        if not self.re_points or not self.im_points:
            raise ValueError("scan grid must be nonempty")
        if min(self.im_points) <= 0:
            raise ValueError("im_points must be positive")

    def points(self) -> np.ndarray:
        x, y = np.meshgrid(np.asarray(self.re_points, float), np.asarray(self.im_points, float))
        return (x + 1j * y).ravel()


def default_grid(n: int = 200, re_range=(-10.0, 10.0), im_range=(1e-3, 10.0)) -> ScanGrid:
    """n x n grid, linear in Re z and log-spaced in Im z."""
    return ScanGrid(tuple(np.linspace(*re_range, n)),
                    tuple(np.geomspace(*im_range, n)))


@dataclass(frozen=True)
class ScanResult:
    min_im: float
    max_im: float
    argmin: complex
    argmax: complex


def halfplane_scan(r, grid: ScanGrid | None = None) -> ScanResult:
    """Extrema of Im f_r over a grid in the upper half-plane."""
    z = (grid or default_grid()).points()
    v = np.asarray(im_f_closed(r, z))
    i, j = int(np.argmin(v)), int(np.argmax(v))
    return ScanResult(float(v[i]), float(v[j]), complex(z[i]), complex(z[j]))


_KNOT_GUARD = 1e-12


def boundary_density_error(r, t: float, y: float) -> float:
    """Distance between the smoothed boundary values and the limiting density.

    r < 1: |(1/pi) Im f_r(t+iy) - phi_r(t)|, knots at -1 and -1/r.
    r > 1: |-(1/pi) Im f_r(-t+iy) - omega_r(t)|, knots at 1/r and 1;
    omega_r is taken as 0 for t < 1/r.
    """
    p = as_param(r)
    t, y = float(t), float(y)
    if y <= 0:
        raise DomainError("y must be positive")
    if p.regime is Regime.SUB_UNIT:
        knots = (-1.0, -1.0 / p.r)
        if min(abs(t - k) for k in knots) < _KNOT_GUARD:
            raise DomainError(f"t={t} is a knot of phi_r")
        return abs(im_f_closed(p, complex(t, y)) / math.pi - float(phi(p, t)))
    if p.regime is Regime.SUPER_UNIT:
        knots = (1.0 / p.r, 1.0)
        if min(abs(t - k) for k in knots) < _KNOT_GUARD:
            raise DomainError(f"t={t} is a knot of omega_r")
        target = float(omega(p, t)) if t >= 1.0 / p.r else 0.0
        return abs(-im_f_closed(p, complex(-t, y)) / math.pi - target)
    return abs(im_f_closed(p, complex(t, y))) / math.pi


def point_mass_probe(r, a: float, ys) -> list[float]:
    """y * Im f_r(a + iy) for each y; the limit as y -> 0+ is the mass at a."""
    ys = [float(y) for y in ys]
    if any(y <= 0 for y in ys):
        raise DomainError("ys must be positive")
    if any(y1 <= y2 for y1, y2 in zip(ys, ys[1:])):
        raise ValueError("ys must be strictly decreasing")
    return [y * float(im_f_closed(r, complex(a, y))) for y in ys]


def beta_probe(r, y: float) -> float:
    """|f_r(iy)/(iy)|, which tends to the linear coefficient beta = 0."""
    if y < 1:
        raise DomainError("beta_probe expects y >= 1")
    return abs(f_direct(r, 1j * y) / (1j * y))


def poisson_smooth(g, y: float, t: float, support=(-1.0, 1.0), breaks=(),
                   cfg: QuadConfig | None = None) -> float:
    """(P_y * g)(t) = (1/pi) int y g(x) / ((t-x)^2 + y^2) dx for g supported in ``support``.

    Uses x = t + y tan(theta), which absorbs the kernel: the integral becomes
    (1/pi) int g(t + y tan theta) dtheta over a finite theta range.
    ``breaks`` are points where g is not smooth.
    """
    if y <= 0:
        raise DomainError("y must be positive")
    a, b = support
    th = lambda x: math.atan((x - t) / y)
    hints = [th(x) for x in breaks if a < x < b]

    def integrand(theta):
        x = t + y * np.tan(theta)
        return np.where((x > a) & (x < b), g(np.clip(x, a, b)), 0.0)

    res = integrate_finite(integrand, th(a), th(b), hints, cfg)
    return res.value / math.pi
