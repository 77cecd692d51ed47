import math

import numpy as np
import pytest

from complexburgers import colehopf, poletrack
from complexburgers.colehopf import EvalOptions
from complexburgers.core import Method, PhysParams
from complexburgers.errors import InvalidInput, TooCloseToSingularity

rng = np.random.default_rng(11)


def test_denominator_schwarz_symmetry():
    p = PhysParams(0.3, 0.5)
    for _ in range(10):
        z = complex(rng.uniform(-3, 3), rng.uniform(-2, 2))
        d = colehopf.denominator(z, p)
        assert abs(colehopf.denominator(z.conjugate(), p) - d.conjugate()) <= 1e-12 * abs(d)


def test_denominator_against_brute_force_trapezoid():
    mu, t = 1.0, 1.0
    s = np.linspace(-60, 60, 1_000_001)
    f = np.exp((-0.5 * np.arctan(s) - s * s / (4 * t)) / mu)
    ref = np.trapezoid(f, s) if hasattr(np, "trapezoid") else np.trapz(f, s)
    d = colehopf.denominator(0, PhysParams(mu, t))
    assert abs(d - ref) <= 1e-8 * abs(ref)


def test_denominator_dips_at_tracked_pole():
    p = PhysParams(0.05, 2.0)
    z0 = poletrack.refine_pole(2.0713 + 0.48208j, 0.05, 2.0)
    d0 = abs(colehopf.denominator(z0, p))
    for dz in (0.05, -0.05, 0.05j, -0.05j):
        assert abs(colehopf.denominator(z0 + dz, p)) >= 1e3 * d0


def test_u_tends_to_initial_value():
    assert abs(colehopf.evaluate_u(0, PhysParams(1.0, 1e-8)) - 1) < 1e-5


def test_real_line_finite_at_inviscid_shock_time():
    p = PhysParams(0.1, 8 * math.sqrt(3) / 9)
    vals = [colehopf.evaluate_u(x, p) for x in np.linspace(-5, 8, 131)]
    assert max(abs(v) for v in vals) < 2
    assert all(abs(v.imag) < 1e-12 for v in vals)


def test_small_time_matches_series():
    p = PhysParams(0.3, 1e-3)
    z = 0.5 + 0.2j
    assert abs(colehopf.evaluate_u(z, p) - colehopf.naive_series(z, p)) < 1e-6


def test_naive_series_terms():
    p0 = PhysParams(0.7, 0.0)
    z = 0.4 + 0.3j
    assert colehopf.naive_series(z, p0) == 1 / (1 + z * z)
    assert colehopf._u1(0, 0.7) == pytest.approx(-1.4)
    with pytest.raises(TooCloseToSingularity):
        colehopf.naive_series(0.999j, p0)


def test_naive_series_matches_exact():
    p = PhysParams(0.5, 1e-3)
    assert abs(colehopf.naive_series(2, p) - colehopf.evaluate_u(2, p)) < 1e-7


def test_saddle_series_expansion_in_t():
    mu, z = 0.4, 0.7
    h = 1e-4
    f = lambda t: colehopf.saddle_series(z, PhysParams(mu, t))
    u0 = f(0.0)
    assert abs(u0 - 1 / (1 + z * z)) < 1e-12
    d1 = (-3 * f(0.0) + 4 * f(h) - f(2 * h)) / (2 * h)
    assert abs(d1 - colehopf._u1(z, mu)) < 1e-6
    assert abs(colehopf.saddle_series(0, PhysParams(0.3, 0.0)) - 1) < 1e-15


def test_saddle_series_matches_exact():
    p = PhysParams(0.2, 0.01)
    assert abs(colehopf.saddle_series(0.5, p) - colehopf.evaluate_u(0.5, p)) < 1e-4
    with pytest.raises(InvalidInput):
        colehopf.saddle_series(0.2 + 1.2j, p)


@pytest.mark.parametrize("mu,t", [(0.1, 1.0), (0.3, 0.5), (1.0, 0.5)])
def test_pole_residue(mu, t):
    z0 = poletrack.closest_pole(mu, t, box=(-2.0, 6.0, 0.02, 5.0), n=(81, 50))
    r = colehopf.residue_probe(z0, PhysParams(mu, t))
    assert abs(r + 2 * mu) <= 0.01 * 2 * mu


def test_local_pole_form_bounded():
    mu = 0.1
    tr = poletrack.track_pole(Method.EXACT_ROOT, mu, 1.0, 1.02, 0.01, poletrack.closest_pole(mu, 1.0))
    z0 = tr.samples[0].z
    speed = abs(tr.samples[1].z - z0) / 0.01
    p = PhysParams(mu, 1.0)
    for r in (1e-2, 1e-3, 1e-4):
        for th in (0.3, 2.0, 4.0):
            z = z0 + r * np.exp(1j * th)
            assert abs(colehopf.evaluate_u(z, p) + 2 * mu / (z - z0)) < 10 * speed


def test_deformation_independence():
    p = PhysParams(0.2, 0.8)
    a = EvalOptions()
    b = EvalOptions(deform_margin=0.3, deform_halfwidth=1.7)
    for z in (0.4 + 1.3j, -0.7 + 1.8j, 1.5 + 2.2j):
        assert colehopf.is_in_deformed_region(z, p)
        da, db = colehopf.denominator(z, p, a), colehopf.denominator(z, p, b)
        assert abs(da - db) <= 1e-9 * abs(da)


def test_newton_step_matches_finite_difference():
    p = PhysParams(0.2, 1.0)
    z = 0.9 + 0.6j
    h = 1e-6
    d = colehopf.denominator(z, p)
    dd = (colehopf.denominator(z + h, p) - colehopf.denominator(z - h, p)) / (2 * h)
    assert abs(colehopf.newton_step(z, p) - (-d / dd)) < 1e-6 * abs(d / dd)


def test_slope_matches_finite_difference():
    p = PhysParams(0.1, 1.5)
    for z in (0.3, 1.7 + 0.2j, -0.4 + 1.4j):
        u, ux = colehopf.evaluate_u_and_slope(z, p)
        h = 1e-5
        fd = (colehopf.evaluate_u(z + h, p) - colehopf.evaluate_u(z - h, p)) / (2 * h)
        assert abs(u - colehopf.evaluate_u(z, p)) < 1e-11 * max(1, abs(u))
        assert abs(ux - fd) < 1e-6 * max(1, abs(ux))


def test_rejects_nonpositive_time():
    with pytest.raises(InvalidInput):
        colehopf.evaluate_u(0.3, PhysParams(0.1, 0.0))
