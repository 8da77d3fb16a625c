"""Laplace-transform layer for 0 < r < 1.

    g_r(s) = r + int_1^inf e^{-st} sigma_r(t) dt        (L g_r = f_r(x)/x)
    h_r(s) = int_1^inf e^{-st} omega_{1/r}(r t) dt      (1 + L h_r = f_{1/r}(r x))

and the convolution equation g_r(x) + int_0^x g_r(s) h_r(x-s) ds = 1, which
is the Laplace-side form of f_r(x) f_{1/r}(rx) = 1.

h_r(s) ~ c / (s log^2 s) as s -> 0+, so int_0^eps h_r is only of order
1/log(1/eps). The half of the convolution integral that meets this
singularity is integrated by parts against H_r(s) = int_0^s h_r, which has
its own convergent representation int_1^inf (1 - e^{-st}) omega_{1/r}(rt)/t dt.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cutplane import DomainError, Regime, as_param, f_direct
from .densities import Kind, density_spec, omega
from .quadrature import (
    DEFAULT_CONFIG,
    QuadConfig,
    QuadResult,
    integrate_density_laplace,
    integrate_density_tail,
    integrate_finite,
    integrate_log_panel,
)

__all__ = [
    "ConvResidual",
    "g_fn",
    "g_prime",
    "h_fn",
    "h_primitive",
    "convolution_residual",
    "reciprocity_residual",
    "laplace_of_g",
]

# smallest Laplace variable evaluated; below it the (bounded, monotone)
# functions are frozen, which only affects tanh-sinh nodes of negligible weight
_S_MIN = 1e-240


def _sub(r):
    p = as_param(r)
    if p.regime is not Regime.SUB_UNIT:
        raise DomainError(f"the Laplace layer is defined for 0 < r < 1, got r={p.r}")
    return p


@lru_cache(maxsize=1 << 16)
def _g(r: float, s: float, cfg: QuadConfig) -> QuadResult:
    res = integrate_density_laplace(density_spec(Kind.SIGMA, r), s, None, cfg)
    return QuadResult(r + res.value, res.err_est, res.evals)


@lru_cache(maxsize=1 << 16)
def _g_prime(r: float, s: float, cfg: QuadConfig) -> QuadResult:
    return -integrate_density_laplace(density_spec(Kind.TSIGMA, r), s, None, cfg)


def _omega_scaled(r: float):
    # t -> omega_{1/r}(r t) on t >= 1, knots at t = 1 and t = 1/r
    R = 1.0 / r
    return lambda t: omega(R, r * t)


@lru_cache(maxsize=1 << 16)
def _h(r: float, s: float, cfg: QuadConfig) -> QuadResult:
    w = _omega_scaled(r)
    rinv = 1.0 / r
    f = lambda t: np.exp(-s * t) * w(t)
    res = integrate_finite(f, 1.0, rinv, (1.0, rinv), cfg)
    T = 2.0 * rinv
    t_end = 1.0 + 60.0 / s
    if t_end <= T:
        return res + integrate_finite(f, rinv, max(t_end, rinv), (rinv,), cfg)
    res = res + integrate_finite(f, rinv, T, (rinv,), cfg)
    turn = 1.0 + 1.0 / s
    return res + integrate_log_panel(f, T, t_end, 1.0, (turn,) if T < turn < t_end else (), cfg)


@lru_cache(maxsize=1 << 16)
def _H(r: float, s: float, cfg: QuadConfig) -> QuadResult:
    w = _omega_scaled(r)
    rinv = 1.0 / r
    f = lambda t: -np.expm1(-s * t) / t * w(t)
    res = integrate_finite(f, 1.0, rinv, (1.0, rinv), cfg)
    T = 2.0 * rinv
    res = res + integrate_finite(f, rinv, T, (rinv,), cfg)
    # beyond t ~ 60/s the factor 1 - e^{-st} is 1 and the tail is a pure density tail
    t_end = max(T, 1.0 + 60.0 / s)
    if t_end > T:
        turn = 1.0 + 1.0 / s
        res = res + integrate_log_panel(f, T, t_end, 1.0, (turn,) if T < turn < t_end else (), cfg)
    return res + integrate_density_tail(f, t_end, cfg)


def g_fn(r, s: float, cfg: QuadConfig | None = None) -> QuadResult:
    """g_r(s) = r + int_1^inf e^{-st} sigma_r(t) dt; takes values in (r, 1)."""
    p = _sub(r)
    if not s > 0:
        raise DomainError("s must be positive")
    return _g(p.r, max(float(s), _S_MIN), cfg or DEFAULT_CONFIG)


def g_prime(r, s: float, cfg: QuadConfig | None = None) -> QuadResult:
    """g_r'(s) = -int_1^inf t e^{-st} sigma_r(t) dt."""
    p = _sub(r)
    if not s > 0:
        raise DomainError("s must be positive")
    return _g_prime(p.r, max(float(s), _S_MIN), cfg or DEFAULT_CONFIG)


def h_fn(r, s: float, cfg: QuadConfig | None = None) -> QuadResult:
    """h_r(s) = int_1^inf e^{-st} omega_{1/r}(r t) dt."""
    p = _sub(r)
    if not s > 0:
        raise DomainError("s must be positive")
    return _h(p.r, max(float(s), _S_MIN), cfg or DEFAULT_CONFIG)


def h_primitive(r, s: float, cfg: QuadConfig | None = None) -> QuadResult:
    """H_r(s) = int_0^s h_r(u) du = int_1^inf (1 - e^{-st}) omega_{1/r}(r t) / t dt."""
    p = _sub(r)
    if s < 0:
        raise DomainError("s must be nonnegative")
    if s == 0:
        return QuadResult(0.0, 0.0, 0)
    return _H(p.r, max(float(s), _S_MIN), cfg or DEFAULT_CONFIG)


@dataclass(frozen=True)
class ConvResidual:
    x: float
    residual: float
    err_est: float


OUTER_CONFIG = QuadConfig(abs_tol=1e-9, rel_tol=1e-9)


def convolution_residual(r, x: float, cfg: QuadConfig | None = None,
                         inner: QuadConfig | None = None) -> ConvResidual:
    """g_r(x) + int_0^x g_r(s) h_r(x-s) ds - 1.

    The integral is split at x/2. On (x/2, x), where h_r is singular at
    the endpoint, integration by parts gives
        int_0^{x/2} g(x-u) h(u) du = g(x/2) H(x/2) + int_0^{x/2} g'(x-u) H(u) du.
    """
    p = _sub(r)
    x = float(x)
    if not x > 0:
        raise DomainError("x must be positive")
    cfg = cfg or OUTER_CONFIG
    inner = inner or DEFAULT_CONFIG
    half = 0.5 * x

    def vec(fn, args):
        return np.array([fn(p.r, max(float(a), _S_MIN), inner).value for a in args])

    near = integrate_finite(lambda s: vec(_g, s) * vec(_h, x - s), 0.0, half, (0.0,), cfg)
    by_parts = integrate_finite(lambda u: vec(_g_prime, x - u) * vec(_H, u), 0.0, half, (0.0,), cfg)
    g_half = _g(p.r, half, inner)
    H_half = _H(p.r, half, inner)
    gx = _g(p.r, x, inner)
    total = gx.value + near.value + g_half.value * H_half.value + by_parts.value - 1.0
    err = (gx.err_est + near.err_est + by_parts.err_est
           + abs(g_half.value) * H_half.err_est + abs(H_half.value) * g_half.err_est)
    return ConvResidual(x, total, err)


def reciprocity_residual(r, x: float) -> float:
    """|f_r(x) f_{1/r}(r x) - 1| by direct evaluation."""
    p = as_param(r)
    x = float(x)
    if not x > 0:
        raise DomainError("x must be positive")
    return abs(f_direct(p, x) * f_direct(p.inverse, p.r * x) - 1.0)


def laplace_of_g(r, y: float, cfg: QuadConfig | None = None,
                 inner: QuadConfig | None = None) -> QuadResult:
    """int_0^inf e^{-yx} g_r(x) dx, which equals f_r(y)/y."""
    p = _sub(r)
    y = float(y)
    if not y > 0:
        raise DomainError("y must be positive")
    cfg = cfg or OUTER_CONFIG
    inner = inner or DEFAULT_CONFIG
    f = lambda s: np.exp(-y * s) * np.array([_g(p.r, max(float(v), _S_MIN), inner).value for v in s])
    x_end = 40.0 / y
    return integrate_finite(f, 0.0, 1.0, (0.0,), cfg) + integrate_log_panel(f, 1.0, x_end, 0.0, (), cfg)
