import math

import numpy as np
import pytest

from complexburgers import inviscid
from complexburgers.errors import MultivaluedRegion

TS = 8 * math.sqrt(3) / 9


def test_characteristics_initial_value():
    for x in (-2.0, 0.0, 0.7, 3.0):
        assert inviscid.characteristics_u(x, 0.0) == pytest.approx(1 / (1 + x * x), abs=1e-15)


def test_value_carried_along_characteristic():
    x0, t = 1.0, 0.5
    u0 = 1 / (1 + x0 * x0)
    assert abs(inviscid.characteristics_u(x0 + u0 * t, t) - u0) < 1e-12


def test_multivalued_after_shock():
    with pytest.raises(MultivaluedRegion):
        inviscid.characteristics_u(2.5, 2.5)


def test_max_slope_blows_up_at_shock():
    for eps in (1e-2, 1e-4, 1e-6):
        x, s = inviscid.max_slope(TS - eps)
        assert s > 1 / (10 * eps)
    x, s = inviscid.max_slope(TS - 1e-6)
    assert abs(x - math.sqrt(3)) < 1e-3 and s > 1e3


def test_max_slope_matches_characteristics():
    t = 1.0
    x, s = inviscid.max_slope(t)
    xs = np.linspace(0, 3, 3001)
    numeric = max(abs(inviscid.characteristics_slope(xx, t)) for xx in xs)
    assert abs(numeric - s) < 1e-3 * s


def test_branch_point_touches_axis_at_shock():
    bp = inviscid.branch_points(TS - 1e-6)
    assert len(bp) == 2
    low = bp.points[0]
    assert abs(low - math.sqrt(3)) < 1e-4


def test_branch_points_small_time_law():
    for t in (1e-4, 1e-6):
        pts = sorted(inviscid.branch_points(t).points, key=lambda z: z.real)
        law = sorted(inviscid.small_time_branch_points(t), key=lambda z: z.real)
        for a, b in zip(pts, law):
            assert abs(a - b) < 0.2 * t**1.5


def test_branch_point_system_residuals():
    for t in (0.1, 0.5, 1.0, 1.5):
        bp = inviscid.branch_points(t)
        assert len(bp) == 2 and all(z.imag >= 0 for z in bp.points)
        for z, u in zip(bp.points, bp.u_values):
            r1, r2 = inviscid.system_residual(z, u, t)
            assert r1 < 1e-10 and r2 < 1e-10
            # conjugate point solves the same system
            c1, c2 = inviscid.system_residual(z.conjugate(), u.conjugate(), t)
            assert c1 < 1e-10 and c2 < 1e-10


def test_quartic_vanishes_at_roots():
    for t in (0.2, 1.2):
        _, a2, a1, a0 = inviscid.quartic_coefficients(t)
        for z, u in zip(*(lambda b: (b.points, b.u_values))(inviscid.branch_points(t))):
            zeta = z - u * t
            val = zeta**4 + a2 * zeta**2 + a1 * zeta + a0
            assert abs(val) <= 1e-9 * (abs(zeta) ** 4 + 2 * abs(zeta) ** 2 + 2 * t * abs(zeta) + 1)
