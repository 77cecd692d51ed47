import math

import numpy as np
import pytest

from complexburgers import colehopf
from complexburgers.core import (Method, PhysParams, PoleTrajectory, TrajectorySample, build_grid,
                                 schwarz_reflect, sup_distance)
from complexburgers.errors import InvalidGrid, InvalidInput


def test_unit_square_grid_centres():
    g = build_grid((0, 1, 0, 1), 2, 2)
    assert list(g.points()) == [0.25 + 0.25j, 0.75 + 0.25j, 0.25 + 0.75j, 0.75 + 0.75j]


def test_grid_count_and_spacing():
    g = build_grid((-5, 5, 0, 5), 100, 50)
    assert len(g.points()) == 5000
    assert g.dx == pytest.approx(0.1) and g.dy == pytest.approx(0.1)
    assert np.allclose(np.diff(g.xs), 0.1) and np.allclose(np.diff(g.ys), 0.1)


@pytest.mark.parametrize("bounds,nx,ny", [((1, 0, 0, 1), 2, 2), ((0, 1, 0, 1), 1, 2),
                                          ((0, 1, 1, 1), 2, 2), ((0, math.inf, 0, 1), 2, 2)])
def test_bad_grids_rejected(bounds, nx, ny):
    with pytest.raises(InvalidGrid):
        build_grid(bounds, nx, ny)


def test_grid_deterministic():
    a = build_grid((-1.3, 2.7, 0.1, 3.3), 37, 41).points()
    b = build_grid((-1.3, 2.7, 0.1, 3.3), 37, 41).points()
    assert a.tobytes() == b.tobytes()


def test_phys_params_validation():
    with pytest.raises(InvalidInput):
        PhysParams(0.0, 1.0)
    with pytest.raises(InvalidInput):
        PhysParams(0.1, -1.0)


def test_schwarz_reflect_examples():
    assert schwarz_reflect(0.3 + 0.4j, 1.5 + 2.5j) == 1.5 - 2.5j
    assert schwarz_reflect(0.7, 0.2) == 0.2


def test_schwarz_reflect_against_direct_evaluation():
    p = PhysParams(0.1, 1.0)
    for z in (0.3 + 0.4j, -1.2 + 0.7j, 2.5 + 1.6j):
        direct = colehopf.evaluate_u(z.conjugate(), p)
        assert abs(direct - schwarz_reflect(z, colehopf.evaluate_u(z, p))) <= 1e-10 * (1 + abs(direct))


def test_trajectory_sorted_and_interpolates():
    tr = PoleTrajectory(Method.EXACT_ROOT, [TrajectorySample(1.0, 1 + 1j), TrajectorySample(0.0, 0j)])
    assert list(tr.times) == [0.0, 1.0]
    assert tr.at(0.5) == pytest.approx(0.5 + 0.5j)
    with pytest.raises(InvalidInput):
        tr.at(2.0)


def test_trajectory_rejects_repeated_times_and_nonfinite():
    with pytest.raises(InvalidInput):
        PoleTrajectory(Method.SADDLE, [TrajectorySample(1.0, 1j), TrajectorySample(1.0, 2j)])
    with pytest.raises(InvalidInput):
        PoleTrajectory(Method.SADDLE, [TrajectorySample(1.0, complex(math.nan, 0), converged=True)])


def test_trajectory_csv_round_trip(tmp_path):
    tr = PoleTrajectory(Method.AAA, [TrajectorySample(0.1 * k, 0.3 * k + 1j / (k + 1), -0.2 + 1e-3j)
                                     for k in range(5)])
    path = tmp_path / "tr.csv"
    tr.to_csv(path)
    back = PoleTrajectory.from_csv(path, Method.AAA)
    assert np.array_equal(back.times, tr.times)
    assert np.array_equal(back.locations, tr.locations)


def test_sup_distance_of_offset_paths():
    a = PoleTrajectory(Method.EXACT_ROOT, [TrajectorySample(t, 1j + t) for t in (0.0, 0.5, 1.0)])
    b = PoleTrajectory(Method.SADDLE, [TrajectorySample(t, 1.01j + t) for t in (0.0, 1.0)])
    assert sup_distance(a, b, 0.0, 1.0) == pytest.approx(0.01)


def test_conjugate_trajectory():
    tr = PoleTrajectory(Method.EXACT_ROOT, [TrajectorySample(1.0, 1 + 2j, -0.2 + 0.1j)])
    c = tr.conj()
    assert c.samples[0].z == 1 - 2j and c.samples[0].residue == -0.2 - 0.1j
