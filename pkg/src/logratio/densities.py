"""Closed-form spectral densities of f_r and their knot metadata.

``sigma``  -- density of the complete Bernstein representation (0 < r < 1), on (1, inf)
``omega``  -- density of the Stieltjes representation (r > 1), on [1/r, inf)
``phi``    -- boundary density (1/pi) Im f_r(t + i0) on the real line (0 < r < 1)
``tsigma`` -- t * sigma_r(t)

All evaluators are vectorised over ``t``. The log-divergence at t = 1/r is
returned as ``+inf`` rather than raised.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .cutplane import DomainError, RatioParam, Regime, as_param

__all__ = [
    "Kind",
    "SingularityType",
    "Singularity",
    "DensitySpec",
    "density_spec",
    "sigma",
    "omega",
    "phi",
    "tsigma",
    "density_derivative",
]

PI2 = math.pi ** 2


class Kind(enum.Enum):
    SIGMA = "sigma"
    OMEGA = "omega"
    PHI = "phi"
    TSIGMA = "tsigma"


class SingularityType(enum.Enum):
    LOG_DIVERGENCE = "log-divergence"
    ZERO_LIMIT = "zero-limit"
    KINK = "kink"


@dataclass(frozen=True)
class Singularity:
    location: float
    type: SingularityType


def _require(p: RatioParam, regime: Regime, name: str):
    if p.regime is not regime:
        raise DomainError(f"{name} requires the {regime.value} regime, got r={p.r}")


def _sigma_parts(r: float, t: np.ndarray) -> np.ndarray:
    # t * sigma_r(t) for t > 1, with +inf at t == 1/r
    rinv = 1.0 / r
    out = np.empty_like(t)
    lt = np.log(t - 1.0)
    den = lt * lt + PI2
    lo = t < rinv
    hi = t > rinv
    # -log(1 - r t) = -log r - log(1/r - t): exact difference near the knot
    out[lo] = -(math.log(r) + np.log(rinv - t[lo])) / den[lo]
    th = t[hi]
    # log((t-1)/(rt-1)) = -log r + log1p((1/r - 1)/(t - 1/r))
    out[hi] = (np.log1p((rinv - 1.0) / (th - rinv)) - math.log(r)) / den[hi]
    out[~(lo | hi)] = np.inf
    return out


def tsigma(r, t):
    """t * sigma_r(t), the density of 1 - f_r as a Stieltjes function."""
    p = as_param(r)
    _require(p, Regime.SUB_UNIT, "tsigma")
    t = np.asarray(t, dtype=float)
    if np.any(t <= 1.0):
        raise DomainError("sigma_r is defined for t > 1")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = _sigma_parts(p.r, np.atleast_1d(t)).reshape(t.shape)
    return np.maximum(out, 0.0)[()]


def sigma(r, t):
    """Density sigma_r(t) on (1, inf) of the complete Bernstein representation.

    Examples
    --------
    >>> float(sigma(0.5, 3.0))  # log(4) / (3 (log^2 2 + pi^2))
    0.04464691...
    """
    t = np.asarray(t, dtype=float)
    with np.errstate(invalid="ignore"):
        return (tsigma(r, t) / t)[()]


def omega(r, t):
    """Density omega_r(t) on [1/r, inf) of the Stieltjes representation (r > 1)."""
    p = as_param(r)
    _require(p, Regime.SUPER_UNIT, "omega")
    t = np.asarray(t, dtype=float)
    shape = t.shape
    t = np.atleast_1d(t)
    rinv = 1.0 / p.r
    if np.any(t < rinv):
        raise DomainError("omega_r is defined for t >= 1/r")
    out = np.zeros_like(t)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        lo = t < 1.0
        out[lo] = -1.0 / np.log1p(-t[lo])
        hi = t > 1.0
        th = t[hi]
        lt = np.log(th - 1.0)
        # (r t - 1)/(t - 1) = r + (r - 1)/(t - 1)
        out[hi] = np.log(p.r + (p.r - 1.0) / (th - 1.0)) / (lt * lt + PI2)
    return np.maximum(out, 0.0).reshape(shape)[()]


def phi(r, t):
    """Boundary density of the Pick measure of f_r, 0 < r < 1, on the whole line.

    Satisfies phi_r(-t) = t sigma_r(t) for t > 1, but is evaluated from its
    own closed form in the variable t < -1.
    """
    p = as_param(r)
    _require(p, Regime.SUB_UNIT, "phi")
    t = np.asarray(t, dtype=float)
    shape = t.shape
    t = np.atleast_1d(t)
    out = np.zeros_like(t)
    knot = -1.0 / p.r
    with np.errstate(divide="ignore", invalid="ignore"):
        s = -t - 1.0
        ls = np.log(np.where(t < -1.0, s, 1.0))
        den = ls * ls + PI2
        mid = (t > knot) & (t < -1.0)
        out[mid] = -np.log1p(p.r * t[mid]) / den[mid]
        left = t < knot
        # (-t-1)/(-1-rt) = (1 + (1/r - 1)/d) / r with d = -1/r - t
        d = knot - t[left]
        out[left] = (np.log1p((-knot - 1.0) / d) - math.log(p.r)) / den[left]
        out[t == knot] = np.inf
    return np.maximum(out, 0.0).reshape(shape)[()]


_EVALUATORS = {Kind.SIGMA: sigma, Kind.OMEGA: omega, Kind.PHI: phi, Kind.TSIGMA: tsigma}


@dataclass(frozen=True)
class DensitySpec:
    """One of the closed-form densities for a fixed r, with its knots.

    ``knots`` partition the domain into pieces on which the closed form is
    smooth; ``domain`` gives the (open or half-open) support.
    """

    kind: Kind
    param: RatioParam
    knots: tuple = ()
    singularities: tuple = field(default=(), compare=False)
    domain: tuple = (1.0, math.inf)

    @property
    def r(self) -> float:
        return self.param.r

    def __call__(self, t):
        return _EVALUATORS[self.kind](self.param, t)

    def pieces(self):
        """Knot-free open subintervals of the domain, left to right."""
        pts = sorted(set([self.domain[0], *self.knots, self.domain[1]]))
        return list(zip(pts[:-1], pts[1:]))


def density_spec(kind, r) -> DensitySpec:
    kind = Kind(kind)
    p = as_param(r)
    L, Z, K = SingularityType.LOG_DIVERGENCE, SingularityType.ZERO_LIMIT, SingularityType.KINK
    if kind in (Kind.SIGMA, Kind.TSIGMA):
        _require(p, Regime.SUB_UNIT, kind.value)
        rinv = 1.0 / p.r
        sings = (Singularity(1.0, Z), Singularity(rinv, L), Singularity(math.inf, Z))
        return DensitySpec(kind, p, (1.0, rinv), sings, (1.0, math.inf))
    if kind is Kind.OMEGA:
        _require(p, Regime.SUPER_UNIT, "omega")
        rinv = 1.0 / p.r
        sings = (Singularity(rinv, K), Singularity(1.0, Z), Singularity(math.inf, Z))
        return DensitySpec(kind, p, (rinv, 1.0), sings, (rinv, math.inf))
    _require(p, Regime.SUB_UNIT, "phi")
    knot = -1.0 / p.r
    sings = (Singularity(knot, L), Singularity(-1.0, Z))
    return DensitySpec(kind, p, (knot, -1.0), sings, (-math.inf, math.inf))


def density_derivative(spec: DensitySpec, t: float, h: float = 1e-4) -> float:
    """Central difference with one Richardson step, (4 D(h/2) - D(h)) / 3.

    The stencil t +- h must stay inside one knot-free piece of the domain.
    """
    t = float(t)
    if h <= 0:
        raise ValueError("h must be positive")
    for a, b in spec.pieces():
        if a < t - h and t + h < b:
            break
    else:
        raise DomainError(f"stencil [{t - h}, {t + h}] crosses a knot or leaves the domain")
    f = lambda s: float(spec(s))
    d1 = (f(t + h) - f(t - h)) / (2 * h)
    d2 = (f(t + h / 2) - f(t - h / 2)) / h
    return (4 * d2 - d1) / 3
