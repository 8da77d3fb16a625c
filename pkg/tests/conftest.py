"""Independent oracles shared by the test modules.

Nothing here imports logratio: values come from mpmath at 30 digits or
from scipy.integrate.quad.
"""
import mpmath as mp
import pytest

mp.mp.dps = 30

SUB_RS = (0.1, 0.3, 0.5, 0.7, 0.9)
SUPER_RS = (1.5, 2.5, 5.0, 10.0)


def mp_f(r, z):
    z = mp.mpmathify(z)
    if z == 0:
        return mp.mpf(r)
    return mp.log(1 + r * z) / mp.log(1 + z)


def mp_boundary_im(r, x, eps=mp.mpf(10) ** -25):
    """Im f_r(x + i0), as the limit from the upper half-plane."""
    return mp.im(mp_f(r, mp.mpc(x, eps)))


def mp_sigma(r, t):
    return mp_boundary_im(r, -t) / (mp.pi * t)


def mp_omega(r, t):
    return -mp_boundary_im(r, -t) / mp.pi


@pytest.fixture(scope="session")
def oracle():
    class O:
        f = staticmethod(mp_f)
        sigma = staticmethod(mp_sigma)
        omega = staticmethod(mp_omega)
        boundary_im = staticmethod(mp_boundary_im)
    return O


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES, key=lambda s: s[6:8]):
        terminalreporter.write_line(line)
