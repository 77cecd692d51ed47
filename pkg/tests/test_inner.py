import cmath
import math

import numpy as np
import pytest

from complexburgers import colehopf, inner
from complexburgers.core import PhysParams
from complexburgers.errors import InvalidInput, NotAPole, SectorBoundary, ValidityRange
from complexburgers.inner import Quadrant, StokesRegion

rng = np.random.default_rng(3)


def test_riccati_residual_random_points():
    for mu in (0.3, 1.0):
        poles = inner.poles_in_box(mu, (-4, 4, -4, 4), 40)
        count = 0
        while count < 50:
            xi = complex(*rng.uniform(-3, 3, 2))
            if abs(xi) > 3 or min((abs(xi - p) for p in poles), default=9) < 0.2:
                continue
            r = inner.riccati_residual(lambda q: inner.phi0(q, mu), xi, mu)
            assert abs(r) <= 1e-6 * max(1, abs(inner.phi0(xi, mu)) ** 2)
            count += 1


def test_far_field_below():
    v = inner.phi0(-10j, 1.0)
    assert abs(v - 0.05) <= 0.02 * 0.05


def test_matches_exact_solution_at_small_time():
    t, mu, xi = 1e-6, 1.0, 1 + 1j
    phi = inner.phi0(xi, mu)
    u = colehopf.evaluate_u(inner.outer_from_inner(xi, t), PhysParams(mu, t))
    assert abs(phi - math.sqrt(t) * u) <= 1e-3 * abs(phi)


def test_local_pole_coefficients():
    mu = 0.5
    xs = inner.find_pole(inner.predicted_poles(mu, 2)[1].xi, mu)
    res, const, lin = inner.phi0_local_pole(xs, mu)
    assert res == -2 * mu
    assert const == xs / 2
    # least-squares Laurent fit on a small circle
    r = 1e-2
    th = 2 * np.pi * np.arange(64) / 64
    e = np.exp(1j * th)
    vals = np.array([inner.phi0(xs + r * q, mu) for q in e])
    A = np.column_stack([1 / (r * e), np.ones_like(e), r * e, (r * e) ** 2])
    c = np.linalg.lstsq(A, vals, rcond=None)[0]
    assert abs(c[0] - res) < 1e-3 and abs(c[1] - const) < 1e-3 and abs(c[2] - lin) < 1e-3


def test_local_pole_rejects_regular_point():
    with pytest.raises(NotAPole):
        inner.phi0_local_pole(0.3 - 0.5j, 1.0)


def test_far_field_sectors():
    mu = 1.0
    for xi in (-20j, 20j):
        ff = inner.phi0_farfield(xi, mu)
        ex = inner.phi0(xi, mu)
        assert abs(ff - ex) <= 0.05 * abs(ex)
    with pytest.raises(SectorBoundary):
        inner.phi0_farfield(20 * cmath.exp(1j * math.pi / 4), mu, strict=True)
    with pytest.raises(InvalidInput):
        inner.phi0_farfield(2.0, mu)


def test_antistokes_modulus_constant():
    mu = 1.0
    ref = 2 * math.sqrt(mu * math.pi) * math.exp(math.pi / 8) * abs(inner.rgamma_c(-0.25j / mu))
    for r in (10, 30, 90):
        v = inner.phi0_farfield(r * cmath.exp(1j * math.pi / 4), mu)
        assert abs(v) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("mu", [0.5, 1.0])
def test_antistokes_form_matches_exact(mu):
    for ray in (math.pi / 4, 3 * math.pi / 4):
        errs = []
        for r in (20, 60):
            xi = r * cmath.exp(1j * ray)
            ex = inner.phi0(xi, mu)
            errs.append(abs(inner.phi0_farfield(xi, mu) - ex) / abs(ex))
        assert errs[1] < 0.06


def test_pole_path_angle_limits():
    assert abs(inner.pole_path_angle(1e8, Quadrant.FIRST, 1.0) - math.pi / 4) < 1e-6
    assert abs(inner.pole_path_angle(1e8, Quadrant.SECOND, 1.0) - 3 * math.pi / 4) < 1e-6
    with pytest.raises(InvalidInput):
        inner.pole_path_angle(1.5, Quadrant.FIRST, 1.0)


def test_pole_path_angle_near_rootfound_pole():
    mu = 1.0
    poles = inner.poles_in_box(mu, (0.5, 6, 0.5, 6), 50)
    near = min(poles, key=lambda p: abs(abs(p) - 5))
    assert abs(inner.pole_path_angle(abs(near), Quadrant.FIRST, mu) - cmath.phase(near)) < 0.02


def test_second_quadrant_angle_structure():
    mu, rho = 1.0, 4.0
    first = inner.pole_path_angle(rho, Quadrant.FIRST, mu) - math.pi / 4
    second = inner.pole_path_angle(rho, Quadrant.SECOND, mu) - 3 * math.pi / 4
    ls = math.log(math.sinh(math.pi / (4 * mu)))
    a = math.log(rho) - math.pi / (8 * mu) - ls / 2
    b = -math.log(rho) - math.pi / (8 * mu) + ls / 2
    assert first == pytest.approx(2 * mu / (rho**2 + 1) * a)
    assert second == pytest.approx(2 * mu / (rho**2 - 1) * b)


def test_moduli_spacing_law():
    mu = 1.0
    rho = inner.pole_moduli(mu, 21)
    assert all(b > a for a, b in zip(rho, rho[1:]))
    ratio = (rho[20] - rho[19]) / math.sqrt(2 * mu * math.pi / 20)
    assert abs(ratio - 1) < 0.1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_moduli_predict_rootfound_poles(n):
    # n = 1 misses by 0.061 (asymptotic law at its lowest index); kept at the stated 0.05
    mu = 1.0
    pred = inner.predicted_poles(mu, 5)[n - 1].xi
    found = inner.find_pole(pred, mu)
    assert abs(found - pred) <= 0.05


def test_moduli_cap():
    with pytest.raises(InvalidInput):
        inner.pole_moduli(1.0, 51)


def test_lowest_pole_sign():
    assert inner.lowest_pole(1.0).imag > 0
    assert inner.lowest_pole(0.1).imag < 0


def test_lowest_pole_small_mu_direction():
    xi = inner.lowest_pole(0.05)
    assert xi.real > 0 and xi.imag < 0


def test_validity_band():
    with pytest.raises(ValidityRange):
        inner.lowest_pole(0.01)


def test_critical_mu():
    assert abs(inner.critical_mu() - 0.1468) <= 0.002


def test_mu_continuity():
    mus = np.linspace(0.06, 1.0, 40)
    path = inner.lowest_pole_path(mus)
    for m, a in zip(mus[::8], path[::8]):
        b = inner.find_pole(a, m + 1e-3)
        assert abs(a - b) <= 0.1


def test_no_lower_poles_above_critical():
    mu_star = inner.critical_mu()
    for mu in (mu_star + 0.01, 0.3, 1.0):
        assert inner.count_poles(mu, (0, 6, -6, -1e-9)) == 0
        assert inner.count_poles(mu, (-6, 0, -6, -1e-9)) == 0


def test_one_lower_pole_below_critical():
    mu_star = inner.critical_mu()
    for mu in (mu_star - 0.01, 0.1):
        assert inner.count_poles(mu, (-6, 6, -6, -1e-9)) == 1


def test_stokes_flags():
    assert inner.stokes_flags(2j) is StokesRegion.BETWEEN_WEDGE
    assert inner.stokes_flags(2) is StokesRegion.BELOW_ANTI_STOKES
    assert inner.stokes_flags(1j + cmath.exp(1j * math.pi / 3)) is StokesRegion.BETWEEN_WEDGE
    with pytest.raises(InvalidInput):
        inner.stokes_flags(1j)
