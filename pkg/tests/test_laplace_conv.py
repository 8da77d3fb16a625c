import math

import mpmath as mp
import numpy as np
import pytest
from scipy import integrate

from logratio.cutplane import DomainError, f_direct
from logratio.laplace_conv import (
    convolution_residual,
    g_fn,
    g_prime,
    h_fn,
    h_primitive,
    laplace_of_g,
    reciprocity_residual,
)
from conftest import mp_omega, mp_sigma


def _mp_laplace(density, s, lo, knots):
    cut = 1 + 200 / s
    pts = sorted({lo, *knots, 1 + 1 / s, cut})
    return mp.quad(lambda t: mp.exp(-s * t) * density(t), [p for p in pts if p <= cut])


@pytest.mark.parametrize("s", [0.05, 1.0, 7.0])
def test_g_against_mpmath(s):
    want = 0.5 + _mp_laplace(lambda t: mp_sigma(0.5, t), s, 1, [2, 4])
    assert g_fn(0.5, s).value == pytest.approx(float(want), rel=1e-11)


def test_g_range():
    for s in (1e-8, 1e-2, 1.0, 10.0):
        assert 0.3 < g_fn(0.3, s).value < 1.0
    assert g_prime(0.3, 1.0).value < 0


@pytest.mark.parametrize("s", [0.05, 1.0, 7.0])
def test_h_against_mpmath(s):
    # omega_2(0.5 t) on t >= 1, knot at t = 2
    want = _mp_laplace(lambda t: mp_omega(2, t / 2), s, 1, [2, 4])
    assert h_fn(0.5, s).value == pytest.approx(float(want), rel=1e-10)


def test_h_primitive_is_antiderivative():
    a, b = 0.2, 1.3
    integral = integrate.quad(lambda s: h_fn(0.5, s).value, a, b, epsabs=1e-13)[0]
    diff = h_primitive(0.5, b).value - h_primitive(0.5, a).value
    assert diff == pytest.approx(integral, rel=1e-10)
    assert h_primitive(0.5, 0.0).value == 0.0


@pytest.mark.parametrize("r,x", [(0.5, 0.1), (0.3, 2.0), (0.8, 5.0)])
def test_convolution_identity(r, x):
    res = convolution_residual(r, x)
    assert abs(res.residual) < 1e-9


def test_reciprocity():
    rng = np.random.default_rng(7)
    for r, x in zip(rng.uniform(0.05, 20, 50), rng.uniform(0.01, 100, 50)):
        assert reciprocity_residual(r, x) < 1e-13


@pytest.mark.parametrize("y", [1.0, 3.0])
def test_double_laplace(y):
    want = f_direct(0.5, y).real / y
    assert laplace_of_g(0.5, y).value == pytest.approx(want, rel=1e-8)


def test_errors():
    with pytest.raises(DomainError):
        g_fn(2.0, 1.0)
    with pytest.raises(DomainError):
        h_fn(0.5, 0.0)
    with pytest.raises(DomainError):
        convolution_residual(0.5, -1.0)
