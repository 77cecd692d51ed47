import math

import numpy as np
import pytest

from complexburgers import colehopf, realline
from complexburgers.core import PhysParams
from complexburgers.errors import InvalidInput, NoInteriorMax
from complexburgers.realline import SolveConfig

TIMES = np.linspace(0.0, 2.0, 41)


@pytest.fixture(scope="module")
def sol01():
    return realline.solve_real(0.1, SolveConfig(T=2.0, M=len(TIMES)))


@pytest.fixture(scope="module")
def sol1():
    return realline.solve_real(1.0, SolveConfig(T=2.0, M=len(TIMES)))


def test_config_validation():
    with pytest.raises(InvalidInput):
        SolveConfig(L=5)
    with pytest.raises(InvalidInput):
        SolveConfig(M=1)
    with pytest.raises(InvalidInput):
        realline.solve_real(0.0)


def test_output_nodes():
    x = realline.output_nodes()
    assert len(x) == 250 and np.all(np.diff(x) < 0)
    assert x[0] == pytest.approx(5 * math.cos(math.pi / 500))


def test_snapshot_layout(sol01):
    assert len(sol01) == len(TIMES)
    assert np.allclose([s.t for s in sol01], TIMES)
    for s in sol01:
        assert np.all(np.diff(s.nodes) < 0)
        assert np.max(np.abs(s.values)) <= 1.05 * 1.0


@pytest.mark.parametrize("which", ["sol01", "sol1"])
def test_mass_conserved(which, request):
    snaps = request.getfixturevalue(which)
    m0 = 2 * math.atan(15.0)
    assert abs(realline.mass(snaps[0]) - m0) < 1e-10
    masses = np.array([realline.mass(s) for s in snaps])
    assert np.max(np.abs(masses - m0)) <= 1e-6
    assert np.max(np.abs(np.diff(masses))) <= 1e-8


@pytest.mark.parametrize("which", ["sol01", "sol1"])
def test_boundary_values_small(which, request):
    # u0(15) = 4.4e-3, so the stated 1e-6 bound cannot hold on [-15, 15]
    snaps = request.getfixturevalue(which)
    assert max(max(abs(s.grid_values[0]), abs(s.grid_values[-1])) for s in snaps) < 1e-6


def test_small_time_matches_series():
    s = realline.solve_real(0.3, SolveConfig(T=1e-3, M=2))[-1]
    mask = np.abs(s.nodes) <= 3
    ser = np.array([colehopf.naive_series(x, PhysParams(0.3, 1e-3)).real for x in s.nodes[mask]])
    assert np.max(np.abs(s.values[mask] - ser)) <= 1e-5


def test_mu1_flattens(sol1):
    s = sol1[20]
    assert s.t == pytest.approx(1.0)
    v = s.values[::-1]
    k = int(np.argmax(v))
    assert v.max() < 1
    assert np.all(np.diff(v[:k + 1]) >= -1e-12) and np.all(np.diff(v[k:]) <= 1e-12)


@pytest.mark.parametrize("which,mu", [("sol01", 0.1), ("sol1", 1.0)])
def test_matches_cole_hopf(which, mu, request):
    snaps = request.getfixturevalue(which)
    xs = np.linspace(-5, 5, 41)
    for t in (0.5, 1.0, 2.0):
        s = snaps[int(round(t / 0.05))]
        num = realline.bary_interp(s.grid, s.grid_values, xs)
        ex = np.array([colehopf.evaluate_u(x, PhysParams(mu, t)).real for x in xs])
        assert np.max(np.abs(num - ex)) <= 1e-5


def test_initial_max_slope(sol01):
    x, v = realline.max_abs_slope(sol01[0])
    assert v == pytest.approx(3 * math.sqrt(3) / 8, abs=1e-8)
    assert abs(abs(x) - 1 / math.sqrt(3)) < 1e-6


def test_slope_grows_for_small_mu(sol01):
    assert realline.max_abs_slope(sol01[10])[1] > realline.max_abs_slope(sol01[0])[1]


def test_slope_decays_for_large_mu(sol1):
    vals = [realline.max_abs_slope(s)[1] for s in sol1[:11]]
    assert np.all(np.diff(vals) < 0)


def test_enstrophy(sol1):
    e = [realline.enstrophy(s) for s in sol1]
    assert all(v >= 0 for v in e)
    assert np.all(np.diff(e) < 0)


def test_initial_enstrophy_value(sol1):
    # (1/2) int 4x^2/(1+x^2)^4 dx = pi/8 on the whole line
    import mpmath as mp
    ref = float(mp.quad(lambda x: 2 * x**2 / (1 + x**2) ** 4, [-15, -1, 0, 1, 15]))
    assert abs(realline.enstrophy(sol1[0]) - ref) < 1e-9
    assert abs(ref - math.pi / 8) < 2e-6  # tail beyond 15 is about 1e-6


def test_snapshot_csv(tmp_path, sol01):
    path = tmp_path / "snaps.csv"
    realline.write_snapshots_csv(path, sol01[:2])
    lines = path.read_text().splitlines()
    assert lines[0] == "t,x,u" and len(lines) == 1 + 2 * 250
    t, x, u = map(float, lines[260].split(","))
    assert u == sol01[1].values[9] and x == sol01[1].nodes[9]


def test_turning_time_single_mu():
    assert abs(realline.slope_turning_time(0.02574) - 3.8438) <= 0.05


def test_no_turning_for_large_mu():
    with pytest.raises(NoInteriorMax):
        realline.slope_turning_time(0.5, T=2.0, dt=0.1)


def test_initial_trend_sign():
    assert realline.initial_slope_trend(0.1) > 0
    assert realline.initial_slope_trend(0.2) < 0
