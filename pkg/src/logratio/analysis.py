"""Monotonicity scans of the densities, the transition point r0, the
Thorin-Bernstein witness for t sigma_r, two-sided inequality sweeps and
finite-difference derivative checks.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .cutplane import DomainError, Regime, as_param, cut_endpoint, f_real, taylor_coeffs
from .densities import DensitySpec, Kind, density_spec, tsigma
from .pickcheck import ScanGrid, default_grid

__all__ = [
    "ScanReport",
    "Inequality",
    "InequalityReport",
    "TBFWitness",
    "monotonicity_scan",
    "sigma_monotone_on_first_piece",
    "find_r0",
    "tbf_witness",
    "inequality_scan",
    "fd_derivative_check",
]

log = logging.getLogger(__name__)

DEAD_BAND = 1e-12
R0_SAMPLES = 4000
EDGE = 1e-6


@dataclass(frozen=True)
class ScanReport:
    interval: tuple
    samples: int
    sign_changes: tuple = ()
    direction: int = 0  # +1 increasing, -1 decreasing, 0 mixed/flat

    @property
    def monotone(self) -> bool:
        return not self.sign_changes


def _chebyshev(a, b, n):
    k = np.arange(1, n + 1)
    return np.sort(0.5 * (a + b) + 0.5 * (b - a) * np.cos((2 * k - 1) * np.pi / (2 * n)))


def monotonicity_scan(spec: DensitySpec, a: float, b: float, n: int = 1000) -> ScanReport:
    """Sign pattern of the density's derivative at n Chebyshev points of (a, b).

    Derivative samples within DEAD_BAND of zero carry no sign.
    """
    if n < 100:
        raise ValueError("n must be at least 100")
    piece = next(((lo, hi) for lo, hi in spec.pieces() if lo <= a and b <= hi), None)
    if piece is None or not a < b:
        raise DomainError(f"({a}, {b}) is not inside one knot-free piece")
    lo, hi = piece
    pts = _chebyshev(a, b, n)
    gap = np.minimum(pts - lo, hi - pts)
    h = np.minimum(1e-4 * np.maximum(1.0, np.abs(pts)), 0.25 * gap)
    # same stencil as density_derivative, applied to all samples at once
    d1 = (spec(pts + h) - spec(pts - h)) / (2 * h)
    d2 = (spec(pts + h / 2) - spec(pts - h / 2)) / h
    d = (4 * d2 - d1) / 3
    signs = np.where(np.abs(d) <= DEAD_BAND, 0, np.sign(d)).astype(int)
    changes = []
    last_s, last_t = 0, None
    for t, s in zip(pts, signs):
        if s == 0:
            continue
        if last_s and s != last_s:
            changes.append(float(0.5 * (t + last_t)))
        last_s, last_t = s, t
    nz = {s for s in signs if s}
    direction = nz.pop() if len(nz) == 1 else 0
    return ScanReport((a, b), n, tuple(changes), direction)


def sigma_monotone_on_first_piece(r, n: int = R0_SAMPLES) -> bool:
    """Whether sigma_r is monotone on (1, 1/r), up to a relative edge margin of 1e-6."""
    p = as_param(r)
    spec = density_spec(Kind.SIGMA, p)
    w = 1.0 / p.r - 1.0
    return monotonicity_scan(spec, 1.0 + EDGE * w, 1.0 / p.r - EDGE * w, n).monotone


def find_r0(lo: float = 0.02, hi: float = 0.5, tol: float = 1e-3, n: int = R0_SAMPLES) -> float:
    """Bisect the transition of r -> (sigma_r monotone on (1, 1/r)).

    r0 is defined as the transition abscissa of this sampled predicate.
    """
    if not 0 < lo < hi < 1:
        raise ValueError("need 0 < lo < hi < 1")
    pred = lambda r: sigma_monotone_on_first_piece(r, n)
    if pred(lo) or not pred(hi):
        raise ValueError("bracket does not straddle the transition (need non-monotone at lo, monotone at hi)")
    probe = [pred(r) for r in np.linspace(lo, hi, 9)]
    if any(a and not b for a, b in zip(probe, probe[1:])):
        log.warning("monotonicity predicate is not monotone in r on [%g, %g]: %s", lo, hi, probe)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class TBFWitness:
    t_lo: float
    t_hi: float
    v_lo: float
    v_hi: float


def tbf_witness(r) -> TBFWitness:
    """A pair t_lo < t_hi with t sigma_r(t_lo) > t sigma_r(t_hi).

    t sigma_r is infinite at 1/r and tends to 0 at infinity, so a point just
    right of 1/r and a far point always work.
    """
    p = as_param(r)
    if p.regime is not Regime.SUB_UNIT:
        raise DomainError("tbf_witness needs 0 < r < 1")
    t_lo = 1.05 / p.r
    v_lo = float(tsigma(p, t_lo))
    t_hi = 50.0 / p.r
    for _ in range(60):
        v_hi = float(tsigma(p, t_hi))
        if v_hi < v_lo:
            return TBFWitness(t_lo, t_hi, v_lo, v_hi)
        t_hi *= 10.0
    raise RuntimeError(f"no decreasing pair found for r={p.r}")


class Inequality(enum.Enum):
    SUB_BOUND = "sub-bound"          # 0 < f_r(x) < r(1+x)/(1+rx), r < 1
    SUB_HALF_PLANE = "sub-halfplane"  # log|1+z| Arg(1+rz) > log|1+rz| Arg(1+z), r < 1
    SUPER_BOUND = "super-bound"          # f_r(x) > r(1+x)/(1+rx), r > 1
    SUPER_HALF_PLANE = "super-halfplane"  # reversed half-plane inequality, r > 1


@dataclass(frozen=True)
class InequalityReport:
    which: Inequality
    samples: int
    violations: int
    worst_margin: float
    violation_range: tuple | None = None


def _x_grid(r, samples, x_max):
    x0 = cut_endpoint(r)
    return x0 + np.geomspace(1e-9, x_max - x0, samples)


def inequality_scan(r, which, samples: int = 10_000, x_max: float = 1e6,
                    grid: ScanGrid | None = None, x_min: float | None = None) -> InequalityReport:
    """Count points where an inequality family fails by more than 1e-12.

    Real bounds are sampled on a grid log-spaced in the distance to the cut
    endpoint, from 1e-9 up to x_max (or from ``x_min`` if given). Half-plane
    forms use the pickcheck grid. ``worst_margin`` is the smallest value of
    (greater side - smaller side).
    """
    p = as_param(r)
    which = Inequality(which)
    need = Regime.SUB_UNIT if which in (Inequality.SUB_BOUND, Inequality.SUB_HALF_PLANE) else Regime.SUPER_UNIT
    if p.regime is not need:
        raise DomainError(f"{which.value} needs the {need.value} regime, got r={p.r}")
    if which in (Inequality.SUB_BOUND, Inequality.SUPER_BOUND):
        if x_min is None:
            x = _x_grid(p, samples, x_max)
        else:
            x = np.geomspace(x_min, x_max, samples) if x_min > 0 else np.linspace(x_min, x_max, samples)
        f = f_real(p, x)
        bound = p.r * (1 + x) / (1 + p.r * x)
        if which is Inequality.SUB_BOUND:
            margin = np.minimum(f, bound - f)
        else:
            margin = f - bound
        pts = x
    else:
        z = (grid or default_grid()).points()
        w1, wr = 1 + z, 1 + p.r * z
        diff = np.log(np.abs(w1)) * np.angle(wr) - np.log(np.abs(wr)) * np.angle(w1)
        margin = diff if which is Inequality.SUB_HALF_PLANE else -diff
        pts = z
    bad = margin < -1e-12
    rng = None
    if np.any(bad):
        bp = pts[bad]
        rng = (complex(bp[0]), complex(bp[-1])) if np.iscomplexobj(bp) else (float(bp.min()), float(bp.max()))
    return InequalityReport(which, int(margin.size), int(bad.sum()), float(margin.min()), rng)


def _fd_step(x, x0, order):
    h = 5e-3 * max(1.0, abs(x))
    return min(h, (x - x0) / (2 * order + 1))


def fd_derivative_check(r, x: float, n: int = 1) -> float:
    """Derivative of f_r at real x without the integral representations.

    n = 1 uses f' log^2(1+x) = log(1+x) r/(1+rx) - log(1+rx)/(1+x) (Taylor
    series near x = 0); n = 2, 3 use central differences of f_r with one
    Richardson step.
    """
    p = as_param(r)
    x = float(x)
    x0 = cut_endpoint(p)
    if not x > x0:
        raise DomainError("x must lie right of the cut")
    if n not in (1, 2, 3):
        raise ValueError("n must be 1, 2 or 3")
    if p.regime is Regime.UNIT:
        return 0.0
    if n == 1:
        if abs(x) < 1e-3:
            c = taylor_coeffs(p)
            return sum(k * c[k] * x ** (k - 1) for k in range(1, len(c)))
        l1, lr = math.log1p(x), math.log1p(p.r * x)
        return (l1 * p.r / (1 + p.r * x) - lr / (1 + x)) / (l1 * l1)
    f = lambda t: float(f_real(p, t))

    def d(h):
        if n == 2:
            return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)
        return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h ** 3)

    h = _fd_step(x, x0, n)
    return (4 * d(h / 2) - d(h)) / 3
