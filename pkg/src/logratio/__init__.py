"""Numerics for f_r(x) = log(1 + r x) / log(1 + x).

Complete Bernstein (0 < r < 1) and Stieltjes (r > 1) representations,
their densities, Pick-function boundary checks, the Laplace convolution
equation and an exact partial-fraction counterexample.
"""
from .cutplane import DomainError, RatioParam, Regime, f_direct, f_real, im_f_closed, principal_log
from .densities import DensitySpec, Kind, density_spec, omega, phi, sigma, tsigma
from .quadrature import QuadConfig, QuadResult, QuadratureError
from .representations import alpha, eval_bernstein_rep, eval_pick_rep, eval_rep, mass_identities

__version__ = "0.1.0"
