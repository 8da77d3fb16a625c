"""Principal logarithm and f_r(z) = Log(1+rz)/Log(1+z) on the cut plane.

Complex values are plain Python ``complex``; ``im_f_closed`` and
``f_real`` also accept numpy arrays.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DomainError",
    "Regime",
    "RatioParam",
    "as_param",
    "principal_log",
    "taylor_coeffs",
    "f_direct",
    "f_real",
    "im_f_closed",
    "domain_check",
    "cut_endpoint",
    "TAYLOR_THRESHOLD",
]

TAYLOR_THRESHOLD = 1e-3
TAYLOR_DEGREE = 10


class DomainError(ValueError):
    """Argument lies outside the domain of the requested function."""


class Regime(enum.Enum):
    SUB_UNIT = "sub-unit"
    UNIT = "unit"
    SUPER_UNIT = "super-unit"


@dataclass(frozen=True)
class RatioParam:
    """The positive parameter r together with its regime (r<1, r=1, r>1)."""

    r: float

    def __post_init__(self):
        r = float(self.r)
        if not (r > 0.0 and math.isfinite(r)):
            raise DomainError(f"r must be a positive finite number, got {self.r!r}")
        object.__setattr__(self, "r", r)

    @property
    def regime(self) -> Regime:
        if self.r < 1.0:
            return Regime.SUB_UNIT
        if self.r > 1.0:
            return Regime.SUPER_UNIT
        return Regime.UNIT

    @property
    def inverse(self) -> "RatioParam":
        return RatioParam(1.0 / self.r)

    def __float__(self):
        return self.r


def as_param(r) -> RatioParam:
    return r if isinstance(r, RatioParam) else RatioParam(r)


def cut_endpoint(r) -> float:
    """Right end of the branch cut (-inf, max(-1, -1/r)]."""
    r = as_param(r).r
    return max(-1.0, -1.0 / r)


def principal_log(z) -> complex:
    """log|z| + i Arg z with Arg in (-pi, pi); raises on the cut (-inf, 0]."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0:
        raise DomainError(f"principal log undefined on the cut (-inf, 0]: {z}")
    return cmath.log(z)


def _log1p_series(c: float, n: int) -> list[float]:
    # coefficients of log(1 + c z) / z: (-1)^k c^(k+1) / (k+1)
    return [(-1.0) ** k * c ** (k + 1) / (k + 1) for k in range(n + 1)]


def taylor_coeffs(r, degree: int = TAYLOR_DEGREE) -> list[float]:
    """Maclaurin coefficients of f_r up to ``degree``.

    Obtained by power-series division of log(1+rz)/z by log(1+z)/z.
    """
    r = as_param(r).r
    num = _log1p_series(r, degree)
    den = _log1p_series(1.0, degree)
    out = []
    for k in range(degree + 1):
        acc = num[k] - sum(out[j] * den[k - j] for j in range(k))
        out.append(acc / den[0])
    return out


def _taylor_eval(coeffs, z):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _log_abs1p(w):
    # log|1 + w| without forming 1 + w, so small w keeps its relative accuracy
    # (|1+w|^2 - 1 loses digits itself once |1+w| is near 0, so only for |w| < 1/2)
    a, b = np.real(w), np.imag(w)
    with np.errstate(divide="ignore", invalid="ignore"):
        near = 0.5 * np.log1p(a * (2.0 + a) + b * b)
        far = np.log(np.abs(1.0 + w))
    return np.where(np.abs(w) < 0.5, near, far)


def clog1p(w: complex) -> complex:
    """Principal Log(1 + w), accurate for small |w|."""
    w = complex(w)
    if w.imag == 0.0 and w.real > -1.0:
        return complex(math.log1p(w.real))
    return complex(float(_log_abs1p(w)), math.atan2(w.imag, 1.0 + w.real))


def domain_check(r, z) -> bool:
    """True iff z is in the holomorphy domain of f_r."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return False
    if z.imag != 0.0:
        return True
    return z.real > cut_endpoint(r)


def f_direct(r, z, *, threshold: float = TAYLOR_THRESHOLD) -> complex:
    """Evaluate f_r(z) = Log(1+rz)/Log(1+z) at a single point of the cut plane.

    For |z| < threshold the removable singularity at 0 is handled by the
    degree-10 Taylor expansion; f_direct(r, 0) == r exactly.
    """
    p = as_param(r)
    z = complex(z)
    if not domain_check(p, z):
        raise DomainError(f"z={z} lies on the cut of f_r for r={p.r}")
    if p.regime is Regime.UNIT:
        return complex(1.0)
    if z == 0:
        return complex(p.r)
    if abs(z) < threshold:
        return complex(_taylor_eval(taylor_coeffs(p), z))
    return clog1p(p.r * z) / clog1p(z)


def f_real(r, x):
    """Vectorised real evaluation of f_r on (max(-1,-1/r), inf) using log1p."""
    p = as_param(r)
    x = np.asarray(x, dtype=float)
    if np.any(x <= cut_endpoint(p)):
        raise DomainError("x must lie to the right of the cut")
    if p.regime is Regime.UNIT:
        return np.ones_like(x)[()]
    small = np.abs(x) < TAYLOR_THRESHOLD
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log1p(p.r * x) / np.log1p(x)
    if np.any(small):
        out = np.where(small, _taylor_eval(taylor_coeffs(p), x), out)
    return out[()]


def im_f_closed(r, z):
    """Imaginary part of f_r on the upper half-plane via the closed formula

        (log|1+z| Arg(1+rz) - log|1+rz| Arg(1+z)) / (log^2|1+z| + Arg^2(1+z)).
    """
    p = as_param(r)
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise DomainError("im_f_closed requires Im z > 0")
    l1, a1 = _log_abs1p(z), np.angle(1 + z)
    lr, ar = _log_abs1p(p.r * z), np.angle(1 + p.r * z)
    return ((l1 * ar - lr * a1) / (l1 * l1 + a1 * a1))[()]
