import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from logratio.cutplane import (
    DomainError,
    RatioParam,
    Regime,
    cut_endpoint,
    domain_check,
    f_direct,
    f_real,
    im_f_closed,
    principal_log,
    taylor_coeffs,
)
from conftest import mp_f

POINTS = [2.0, 0.3, -0.5, 1e-5, 1e4, 1 + 1j, -0.5 + 0.3j, -3 + 1e-3j, -20 - 4j, 1e-4 + 1e-4j]


@pytest.mark.parametrize("r", [0.1, 0.5, 0.9, 2.5, 10.0])
@pytest.mark.parametrize("z", POINTS)
def test_f_direct_matches_mpmath(r, z):
    if not domain_check(r, z):
        pytest.skip("outside the cut plane")
    want = complex(mp_f(r, z))
    assert abs(f_direct(r, z) - want) <= 1e-14 * max(1, abs(want))


def test_frozen_values():
    # mpmath, 30 digits
    assert f_direct(0.5, 2.0).real == pytest.approx(0.630929753571457437, rel=1e-15)
    assert f_direct(2.5, 2.0).real == pytest.approx(1.630929753571457437, rel=1e-15)
    v = f_direct(0.5, complex(-0.5, 0.3))
    assert v == pytest.approx(complex(0.430996449860261767, 0.0658565221909906084), rel=1e-14)


def test_values_at_zero_and_unit():
    assert f_direct(0.3, 0) == 0.3
    assert f_direct(1.0, 5 + 2j) == 1.0
    assert RatioParam(1.0).regime is Regime.UNIT


def test_param_validation():
    for bad in (0.0, -1.0, math.nan, math.inf):
        with pytest.raises(DomainError):
            RatioParam(bad)
    p = RatioParam(0.25)
    assert p.inverse.r == 4.0 and float(p) == 0.25
    assert p.regime is Regime.SUB_UNIT and RatioParam(3).regime is Regime.SUPER_UNIT


def test_cut_endpoint():
    assert cut_endpoint(0.5) == -1.0
    assert cut_endpoint(4.0) == -0.25


@pytest.mark.parametrize("z", [-1.0, -2.0, -0.25 + 0j])
def test_cut_rejected(z):
    with pytest.raises(DomainError):
        f_direct(4.0, z)


def test_principal_log():
    assert principal_log(1j) == pytest.approx(cmath.log(1j))
    with pytest.raises(DomainError):
        principal_log(-1.0)
    with pytest.raises(DomainError):
        principal_log(0.0)


def test_taylor_coeffs_match_mpmath():
    c = taylor_coeffs(0.5, 8)
    want = mp.taylor(lambda x: mp_f(0.5, x) if x != 0 else mp.mpf(0.5), 0, 8)
    np.testing.assert_allclose(c, [float(w) for w in want], rtol=1e-12, atol=1e-15)


@pytest.mark.parametrize("z", [1e-4, -1e-4, 3e-4j, 1e-8, 9.9e-4 + 1e-4j])
def test_taylor_branch_is_continuous(z):
    want = complex(mp_f(0.3, z))
    assert abs(f_direct(0.3, z) - want) < 1e-15


def test_f_real_vectorised():
    x = np.array([-0.9, 0.0, 1e-6, 0.5, 10.0, 1e8])
    got = f_real(0.5, x)
    want = [float(mp.re(mp_f(0.5, v))) for v in x]
    np.testing.assert_allclose(got, want, rtol=1e-14)


def test_im_closed_form():
    z = np.array([1 + 1j, -3 + 0.01j, -0.5 + 2j])
    got = im_f_closed(0.5, z)
    want = [float(mp.im(mp_f(0.5, v))) for v in z]
    np.testing.assert_allclose(got, want, rtol=1e-13)
    with pytest.raises(DomainError):
        im_f_closed(0.5, 1.0 + 0j)


@pytest.mark.parametrize("r", [0.02, 0.5, 10.0])
@pytest.mark.parametrize("scale", [0.999, 0.5, 1e-2, -0.9])
@pytest.mark.parametrize("imag", [0.0, 1e-6, 0.3])
def test_accuracy_near_cut_and_zero(r, scale, imag):
    # r x is formed in floating point by the caller too, so compare on the same inputs
    z = complex(scale * cut_endpoint(r), imag)
    want = complex(mp.log(1 + mp.mpf(r) * z) / mp.log(1 + mp.mpc(z)))
    assert abs(f_direct(r, z) - want) <= 1e-13 * abs(want)
