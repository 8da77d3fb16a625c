import math

import numpy as np
import pytest

from logratio.cutplane import DomainError
from logratio.pickcheck import (
    ScanGrid,
    beta_probe,
    boundary_density_error,
    default_grid,
    halfplane_scan,
    point_mass_probe,
    poisson_smooth,
)
from conftest import SUB_RS, SUPER_RS

YS = [10.0 ** -k for k in range(2, 6)]


@pytest.fixture(scope="module")
def grid():
    return default_grid(200)


def test_grid_shape(grid):
    pts = grid.points()
    assert pts.shape == (40000,)
    assert pts.imag.min() == pytest.approx(1e-3)


@pytest.mark.parametrize("r", SUB_RS)
def test_sub_unit_positive(grid, r):
    assert halfplane_scan(r, grid).min_im > 0


@pytest.mark.parametrize("r", SUPER_RS)
def test_super_unit_negative(grid, r):
    assert halfplane_scan(r, grid).max_im < 0


def test_unit_is_flat():
    res = halfplane_scan(1.0, default_grid(20))
    assert res.min_im == 0.0 and res.max_im == 0.0


@pytest.mark.parametrize("r,t", [(0.5, -3.0), (0.5, -1.5), (0.5, -20.0), (0.1, -5.0),
                                 (2.5, 0.7), (2.5, 0.5), (2.5, 3.0), (10.0, 0.3)])
def test_boundary_error_decreases(r, t):
    errs = [boundary_density_error(r, t, y) for y in YS]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-3
    # first-order convergence in y
    assert errs[-2] / errs[-1] == pytest.approx(10.0, rel=0.2)


def test_boundary_error_rejects_knot():
    with pytest.raises(DomainError):
        boundary_density_error(0.5, -2.0, 1e-3)


@pytest.mark.parametrize("r", [0.5, 2.5])
def test_point_mass_probes(r):
    for a in (-1.0, -1.0 / r):
        seq = [abs(v) for v in point_mass_probe(r, a, YS)]
        assert all(b < a_ for a_, b in zip(seq, seq[1:]))
        assert seq[-1] < 1e-2


def test_point_mass_off_support_is_quadratic():
    # away from the support y Im f ~ y^2 f'(a): no atom, but not below 1e-8 at y = 1e-2
    seq = point_mass_probe(0.5, 5.0, YS)
    assert seq[0] > 1e-8
    assert seq[1] / seq[0] == pytest.approx(1e-2, rel=1e-3)


def test_point_mass_sign_for_super_unit():
    assert all(v < 0 for v in point_mass_probe(2.5, -0.4, YS))


@pytest.mark.parametrize("r", [0.5, 2.5])
def test_beta(r):
    assert beta_probe(r, 1e6) < 1e-5


def _triangle(x):
    return np.maximum(0.0, 1.0 - np.abs(x))


def test_poisson_zero():
    assert poisson_smooth(lambda x: np.zeros_like(x), 1e-3, 0.0) == 0.0


def test_poisson_recovers_bump():
    assert poisson_smooth(_triangle, 1e-4, 0.0, breaks=(0.0,)) == pytest.approx(1.0, abs=1e-3)


def test_poisson_far_field():
    v = poisson_smooth(_triangle, 1e-3, 10.0, breaks=(0.0,))
    assert 0 < v < 1e-4
    # (1/pi) y int g / (t - x)^2 <= y/(pi (t-1)^2) for the unit-mass bump
    assert v <= 1e-3 / (math.pi * 81)


def test_poisson_first_order():
    errs = [abs(poisson_smooth(_triangle, y, 0.3, breaks=(0.0,)) - 0.7) for y in (1e-1, 1e-2, 1e-3)]
    assert errs[0] / errs[1] == pytest.approx(10, rel=0.1)
    assert errs[1] / errs[2] == pytest.approx(10, rel=0.1)


def test_custom_grid():
    g = ScanGrid((0.0, 1.0), (0.5,))
    assert len(g.points()) == 2
