"""f_r through its integral representations.

0 < r < 1 (complete Bernstein):
    f_r(z)     = r + int_1^inf z/(z+t) sigma_r(t) dt
    1 - f_r(z) = int_1^inf t sigma_r(t)/(z+t) dt
    f_r(z)/z   = r/z + int_1^inf sigma_r(t)/(z+t) dt
    f_r(z)     = alpha_r + int_1^inf (t/(1+t^2) - 1/(t+z)) phi_r(-t) dt
    f_r(x)     = r + int_0^inf (1 - e^{-xs}) m_r(s) ds,  m_r(s) = int_1^inf e^{-ts} t sigma_r(t) dt
r > 1 (Stieltjes):
    f_r(z)     = 1 + int_{1/r}^inf omega_r(t)/(z+t) dt

Complex weights are integrated as two real integrals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cutplane import DomainError, RatioParam, Regime, as_param, domain_check
from .densities import DensitySpec, Kind, density_spec
from .quadrature import (
    DEFAULT_CONFIG,
    QuadConfig,
    QuadResult,
    integrate_density_full,
    integrate_density_laplace,
    integrate_finite,
    integrate_log_panel,
)

__all__ = [
    "PickData",
    "MeasureRep",
    "RepValue",
    "MassResiduals",
    "pick_data",
    "measure_rep",
    "alpha",
    "eval_rep",
    "eval_one_minus_rep",
    "eval_f_over_z_rep",
    "eval_pick_rep",
    "mass_identities",
    "derivative_rep",
    "bernstein_m",
    "eval_bernstein_rep",
]

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class PickData:
    """(alpha, beta, mu) of the Pick representation; mu = phi_r dt, no atoms."""

    alpha: float
    beta: float
    density: DensitySpec
    point_masses: tuple = ()


@dataclass(frozen=True)
class MeasureRep:
    """Stieltjes measure of f_r(z)/z (r < 1) or of f_r - 1 (r > 1)."""

    atom_at_zero: float
    density: DensitySpec


@dataclass(frozen=True)
class RepValue:
    value: complex
    err_est: float
    evals: int


@dataclass(frozen=True)
class MassResiduals:
    r: float
    residuals: dict      # name -> |computed - target|
    targets: dict
    computed: dict
    err_est: dict


def alpha(r) -> float:
    """Re f_r(i) in closed form: (log2 log(1+r^2) + pi arctan r) / (log^2 2 + pi^2/4)."""
    r = as_param(r).r
    return (LOG2 * math.log1p(r * r) + math.pi * math.atan(r)) / (LOG2 ** 2 + math.pi ** 2 / 4)


def pick_data(r) -> PickData:
    p = as_param(r)
    return PickData(alpha(p), 0.0, density_spec(Kind.PHI, p))


def measure_rep(r) -> MeasureRep:
    p = as_param(r)
    if p.regime is Regime.SUB_UNIT:
        return MeasureRep(p.r, density_spec(Kind.SIGMA, p))
    if p.regime is Regime.SUPER_UNIT:
        return MeasureRep(0.0, density_spec(Kind.OMEGA, p))
    raise DomainError("r = 1 has no representing measure (f_1 is constant)")


def _check_domain(p: RatioParam, z):
    if not domain_check(p, z):
        raise DomainError(f"z={z} lies on the cut for r={p.r}")


def _need(p: RatioParam, regime: Regime, what: str):
    if p.regime is not regime:
        raise DomainError(f"{what} needs the {regime.value} regime, got r={p.r}")


def _complex_integral(spec, weight, cfg) -> RepValue:
    """int weight(t) density(t) dt for a complex-valued weight."""
    re = integrate_density_full(spec, lambda t: np.real(weight(t)), cfg)
    im = integrate_density_full(spec, lambda t: np.imag(weight(t)), cfg)
    return RepValue(complex(re.value, im.value), math.hypot(re.err_est, im.err_est) if im.err_est else re.err_est,
                    re.evals + im.evals)


def _real_or_complex(spec, weight, z, cfg) -> RepValue:
    if complex(z).imag == 0.0:
        res = integrate_density_full(spec, lambda t: np.real(weight(t)), cfg)
        return RepValue(complex(res.value), res.err_est, res.evals)
    return _complex_integral(spec, weight, cfg)


def _shift(rv: RepValue, c) -> RepValue:
    return RepValue(c + rv.value, rv.err_est, rv.evals)


def eval_rep(r, z, cfg: QuadConfig | None = None) -> RepValue:
    """f_r(z) from the complete Bernstein (r<1) or Stieltjes (r>1) representation."""
    p = as_param(r)
    z = complex(z)
    _check_domain(p, z)
    if p.regime is Regime.UNIT:
        raise DomainError("r = 1 needs no representation (f_1 == 1)")
    if p.regime is Regime.SUB_UNIT:
        if z == 0:
            return RepValue(complex(p.r), 0.0, 0)
        rv = _real_or_complex(density_spec(Kind.SIGMA, p), lambda t: z / (z + t), z, cfg)
        return _shift(rv, p.r)
    rv = _real_or_complex(density_spec(Kind.OMEGA, p), lambda t: 1.0 / (z + t), z, cfg)
    return _shift(rv, 1.0)


def eval_one_minus_rep(r, z, cfg: QuadConfig | None = None) -> RepValue:
    """1 - f_r(z) = int t sigma_r(t)/(z+t) dt for 0 < r < 1."""
    p = as_param(r)
    _need(p, Regime.SUB_UNIT, "eval_one_minus_rep")
    z = complex(z)
    _check_domain(p, z)
    return _real_or_complex(density_spec(Kind.TSIGMA, p), lambda t: 1.0 / (z + t), z, cfg)


def eval_f_over_z_rep(r, z, cfg: QuadConfig | None = None) -> RepValue:
    """f_r(z)/z = r/z + int sigma_r(t)/(z+t) dt for 0 < r < 1, z != 0."""
    p = as_param(r)
    _need(p, Regime.SUB_UNIT, "eval_f_over_z_rep")
    z = complex(z)
    _check_domain(p, z)
    if z == 0:
        raise DomainError("f_r(z)/z is singular at z = 0")
    rv = _real_or_complex(density_spec(Kind.SIGMA, p), lambda t: 1.0 / (z + t), z, cfg)
    return _shift(rv, p.r / z)


def eval_pick_rep(r, z, cfg: QuadConfig | None = None) -> RepValue:
    """alpha_r + int_1^inf (t/(1+t^2) - 1/(t+z)) phi_r(-t) dt for 0 < r < 1."""
    p = as_param(r)
    _need(p, Regime.SUB_UNIT, "eval_pick_rep")
    z = complex(z)
    _check_domain(p, z)

    def weight(t):
        # 1/(t-z) - t/(1+t^2) in a form free of cancellation for large |t|
        return (1.0 + t * z) / (t - z) / (1.0 + t * t)

    rv = _real_or_complex(density_spec(Kind.PHI, p), weight, z, cfg)
    return _shift(rv, alpha(p))


def mass_identities(r, cfg: QuadConfig | None = None) -> MassResiduals:
    """Residuals of the total-mass identities of the representing densities.

    r < 1: int sigma_r = 1 - r and int sigma_r/(1+t^2) = alpha_r - r.
    r > 1: int omega_r(t)/t = r - 1.
    """
    p = as_param(r)
    if p.regime is Regime.SUB_UNIT:
        spec = density_spec(Kind.SIGMA, p)
        runs = {
            "sigma_mass": (integrate_density_full(spec, None, cfg), 1.0 - p.r),
            "sigma_pick_mass": (integrate_density_full(spec, lambda t: 1.0 / (1.0 + t * t), cfg),
                                alpha(p) - p.r),
        }
    elif p.regime is Regime.SUPER_UNIT:
        spec = density_spec(Kind.OMEGA, p)
        runs = {"omega_mass": (integrate_density_full(spec, lambda t: 1.0 / t, cfg), p.r - 1.0)}
    else:
        raise DomainError("mass identities are regime specific; r = 1 has none")
    return MassResiduals(
        r=p.r,
        residuals={k: abs(res.value - tgt) for k, (res, tgt) in runs.items()},
        targets={k: tgt for k, (_, tgt) in runs.items()},
        computed={k: res.value for k, (res, _) in runs.items()},
        err_est={k: res.err_est for k, (res, _) in runs.items()},
    )


def derivative_rep(r, x: float, n: int, cfg: QuadConfig | None = None) -> QuadResult:
    """n-th derivative of f_r at real x by differentiating under the integral.

    r < 1: (-1)^(n+1) n! int t sigma_r(t)/(x+t)^(n+1) dt
    r > 1: (-1)^n n! int omega_r(t)/(x+t)^(n+1) dt
    """
    p = as_param(r)
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_domain(p, x)
    x = float(x)
    if p.regime is Regime.UNIT:
        return QuadResult(0.0, 0.0, 0)
    if p.regime is Regime.SUB_UNIT:
        spec, sign = density_spec(Kind.TSIGMA, p), (-1) ** (n + 1)
    else:
        spec, sign = density_spec(Kind.OMEGA, p), (-1) ** n
    res = integrate_density_full(spec, lambda t: (x + t) ** -(n + 1.0), cfg)
    return res.scale(sign * math.factorial(n))


@lru_cache(maxsize=65536)
def _bernstein_m(r: float, s: float, cfg: QuadConfig) -> QuadResult:
    return integrate_density_laplace(density_spec(Kind.TSIGMA, r), s, None, cfg)


def bernstein_m(r, s: float, cfg: QuadConfig | None = None) -> QuadResult:
    """m_r(s) = int_1^inf exp(-t s) t sigma_r(t) dt, the Levy density of f_r."""
    p = as_param(r)
    _need(p, Regime.SUB_UNIT, "bernstein_m")
    if not s > 0:
        raise DomainError("s must be positive")
    return _bernstein_m(p.r, float(s), cfg or DEFAULT_CONFIG)


BERNSTEIN_OUTER = QuadConfig(abs_tol=1e-9, rel_tol=1e-9)
_S_FLOOR = 1e-20
_S_MAX = 45.0


def eval_bernstein_rep(r, x: float, cfg: QuadConfig | None = None,
                       inner: QuadConfig | None = None) -> QuadResult:
    """f_r(x) = r + int_0^inf (1 - e^{-xs}) m_r(s) ds, a nested integral.

    The outer integral is split at s = 1, the tail uses s = e^w and stops at
    s = 45 where m_r(s) < e^{-45} times a bounded factor. Below s = 1e-20 the
    integrand is bounded by x (1-r) s / e and its contribution is dropped.
    """
    p = as_param(r)
    _need(p, Regime.SUB_UNIT, "eval_bernstein_rep")
    x = float(x)
    if not x > 0:
        raise DomainError("x must be positive")
    cfg = cfg or BERNSTEIN_OUTER
    inner = inner or DEFAULT_CONFIG

    def m(s):
        return np.array([_bernstein_m(p.r, float(v), inner).value if v >= _S_FLOOR else 0.0
                         for v in s])

    head = integrate_finite(lambda s: -np.expm1(-x * s) * m(s), 0.0, 1.0, (0.0,), cfg)
    tail = integrate_log_panel(lambda s: -np.expm1(-x * s) * m(s), 1.0, _S_MAX, 0.0, (), cfg)
    total = head + tail
    return QuadResult(p.r + total.value, total.err_est, total.evals)
