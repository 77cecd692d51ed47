import math

import numpy as np
import pytest

from complexburgers import colehopf, inner, poletrack
from complexburgers.core import Method, PhysParams, sup_distance
from complexburgers.errors import InvalidInput, SeedRejected

Z_EX = 2.0713 + 0.48208j


def test_cubic_real_root_at_origin():
    ss = poletrack.saddle_points(0, 1.0)
    real = [s for s in ss.roots if abs(s.imag) < 1e-12]
    assert len(real) == 1 and abs(real[0].real + 0.68233) < 1e-5
    assert max(ss.residuals(0, 1.0)) < 1e-10


def test_worked_example_roots_and_h_values():
    ss = poletrack.saddle_points(Z_EX, 2.0)
    expect = [1.703 + 0.7781j, -0.10944 + 0.31644j, 0.4778 - 0.61306j]
    for e in expect:
        assert min(abs(r - e) for r in ss.roots) < 1e-3
    i, j = ss.selected_pair
    got = sorted([ss.h_values[i], ss.h_values[j]], key=lambda h: -h.real)
    assert abs(got[0] - (-0.5306 - 0.2518j)) < 1e-3 or abs(got[0] - (-0.5573 - 0.0628j)) < 1e-3
    hs = {round(h.real, 4) + 1j * round(h.imag, 4) for h in got}
    assert hs == {-0.5573 - 0.0628j, -0.5306 - 0.2518j}
    assert all(math.cos(d) > 0 for d in ss.angles)
    assert max(ss.residuals(Z_EX, 2.0)) < 1e-10


def test_pair_selection_rule():
    for z, t in ((0.5 + 0.3j, 1.0), (1.5 + 0.6j, 1.0), (Z_EX, 2.0)):
        ss = poletrack.saddle_points(z, t)
        i, j = ss.selected_pair
        gaps = [abs(ss.h_values[a].real - ss.h_values[b].real) for a, b in ((0, 1), (0, 2), (1, 2))]
        assert abs(ss.h_values[i].real - ss.h_values[j].real) == pytest.approx(min(gaps))


def test_saddle_denominator_accuracy():
    z, t, mu = 1.5 + 0.6j, 1.0, 0.05
    sd = poletrack.saddle_denominator(z, t, mu)
    d = colehopf.denominator(z, PhysParams(mu, t))
    assert abs(sd - d) / abs(d) <= 0.05


def test_saddle_denominator_scaling():
    z, t = 1.5 + 0.6j, 1.0
    vals = []
    for mu in (0.05, 0.025):
        m, L = poletrack.saddle_log_denominator(z, t, mu)
        vals.append(abs(m) / math.sqrt(mu))
    assert 0.2 < vals[1] / vals[0] < 5


def test_saddle_local_minimum_near_exact_pole():
    # the two-saddle zero sits 9.7e-3 from the exact pole; the 5e-3 bound is kept
    exact = poletrack.refine_pole(Z_EX, 0.05, 2.0)
    sad = poletrack.refine_pole(exact, 0.05, 2.0, method=Method.SADDLE)
    assert abs(sad - exact) <= 5e-3


def test_seed_rejected():
    with pytest.raises(SeedRejected):
        poletrack.track_pole(Method.EXACT_ROOT, 0.05, 2.0, 1.0, 0.1, complex(50, -60), max_step=1e-6)
    with pytest.raises(InvalidInput):
        poletrack.track_pole(Method.EXACT_ROOT, 0.05, 2.0, 1.0, 0.0, Z_EX)


@pytest.fixture(scope="module")
def mu005_tracks():
    seed = poletrack.closest_pole(0.05, 2.0)
    ex = poletrack.track_pole(Method.EXACT_ROOT, 0.05, 2.0, 0.2, 0.02, seed)
    sd = poletrack.track_pole(Method.SADDLE, 0.05, 2.0, 0.2, 0.02, seed)
    return ex, sd


def test_mu005_moves_towards_axis(mu005_tracks):
    ex, _ = mu005_tracks
    g = ex.good()
    assert g.times[0] <= 0.2 + 1e-9
    # going forward in time Im decreases over the tracked window
    assert g.locations[-1].imag < g.locations[0].imag


def test_exact_and_saddle_agree(mu005_tracks):
    ex, sd = mu005_tracks
    assert sup_distance(ex, sd, 0.2, 2.0) <= 0.02


def test_mu05_moves_away_initially():
    mu = 0.5
    seed = poletrack.closest_pole(mu, 0.2, box=(-1, 4, 0.5, 4), n=(51, 36))
    tr = poletrack.track_pole(Method.EXACT_ROOT, mu, 0.2, 0.01, 0.01, seed).good()
    ims = tr.locations.imag
    assert len(ims) >= 10 and np.all(np.diff(ims[:10]) > 0)


def test_small_time_limit_matches_inner():
    mu, t = 0.3, 1e-4
    xi0 = inner.lowest_pole(mu)
    z = poletrack.refine_pole(1j + math.sqrt(t) * xi0, mu, t, max_step=0.005)
    assert abs((z - 1j) / math.sqrt(t) - xi0) <= 0.05


def test_residues_along_track():
    mu = 0.1
    seed = poletrack.closest_pole(mu, 1.0)
    tr = poletrack.track_pole(Method.EXACT_ROOT, mu, 1.0, 0.5, 0.1, seed, residues=True)
    for s in tr.good().samples:
        assert abs(s.residue + 2 * mu) <= 0.02 * 2 * mu


def test_interior_distance_minimum():
    seed = poletrack.closest_pole(0.05, 2.0)
    tr = poletrack.track_pole(Method.EXACT_ROOT, 0.05, 2.0, 5.0, 0.05, seed)
    tmin, _ = poletrack.distance_minimum(tr)
    assert 2.0 < tmin < 5.0


def test_conjugate_tracking():
    seed = poletrack.closest_pole(0.1, 1.5)
    up = poletrack.track_pole(Method.EXACT_ROOT, 0.1, 1.5, 1.0, 0.1, seed)
    down = poletrack.track_pole(Method.EXACT_ROOT, 0.1, 1.5, 1.0, 0.1, seed.conjugate())
    assert np.max(np.abs(down.locations - up.conj().locations)) <= 1e-9
