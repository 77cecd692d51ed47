import json
import math

import numpy as np
import pytest

from complexburgers import colehopf, render
from complexburgers.core import PhysParams, build_grid
from complexburgers.errors import NearPole

POLE = 1.4046671588850832 + 0.8425355462166962j  # mu = 0.1, t = 1


def exact(z):
    return colehopf.evaluate_u(z, PhysParams(0.1, 1.0))


def _pixel(grid, z):
    col = int((z.real - grid.x_min) / grid.dx)
    row = grid.ny - 1 - int((z.imag - grid.y_min) / grid.dy)
    return row, col


def test_hue_convention():
    assert render.hsv_to_rgb(render.hue_of(1.0)) == (255, 0, 0)
    assert render.hsv_to_rgb(render.hue_of(-1.0)) == (0, 255, 255)
    assert render.hsv_to_rgb(render.hue_of(1j)) == (128, 255, 0)
    assert 0 <= render.hue_of(-1 - 1e-300j) < 1


def test_identity_is_colour_wheel():
    grid = build_grid((-1, 1, -1, 1), 64, 64)
    img = render.render_portrait(grid, lambda z: z)
    assert img.failures == 0 and len(img.pixels) == 3 * 64 * 64
    for z in (0.7 + 0.1j, -0.3 + 0.6j, -0.5 - 0.5j, 0.2 - 0.8j):
        r, c = _pixel(grid, z)
        zc = complex(grid.xs[c], grid.ys[grid.ny - 1 - r])
        assert img.rgb(r, c) == render.hsv_to_rgb(render.hue_of(zc))
    # right of the origin is red, left of it is cyan
    assert img.rgb(32, 63)[0] == 255 and img.rgb(32, 0)[0] == 0


def test_winding_zero_and_pole():
    grid = build_grid((-1, 1, -1, 1), 60, 60)
    c = 0.1 + 0.2j
    z_img = render.render_portrait(grid, lambda z: z - c)
    p_img = render.render_portrait(grid, lambda z: 1 / (z - c))
    r, col = _pixel(grid, c)
    assert render.winding_of_colours(z_img, r, col, 8) == 1
    assert render.winding_of_colours(p_img, r, col, 8) == -1


def test_exact_pole_reverses_colours():
    grid = build_grid((0, 3, 0, 3), 90, 90)
    img = render.render_portrait(grid, exact)
    r, c = _pixel(grid, POLE)
    assert render.winding_of_colours(img, r, c, 4) == -1


def test_portrait_deterministic(tmp_path):
    grid = build_grid((0.5, 2.5, 0.2, 1.8), 24, 20)
    a = render.write_portrait(tmp_path / "a.ppm", grid, exact)
    b = render.write_portrait(tmp_path / "b.ppm", grid, exact)
    assert a == b
    assert (tmp_path / "a.ppm").read_bytes() == (tmp_path / "b.ppm").read_bytes()
    assert (tmp_path / "a.ppm").read_bytes().startswith(b"P6\n24 20\n255\n")


def test_failures_are_black(tmp_path):
    def half(z):
        if z.real < 0:
            raise NearPole("test")
        return z

    grid = build_grid((-1, 1, -1, 1), 10, 10)
    img = render.write_portrait(tmp_path / "h.ppm", grid, half)
    assert img.failures == 50
    assert img.rgb(0, 0) == (0, 0, 0) and img.rgb(0, 9) != (0, 0, 0)
    report = json.loads((tmp_path / "h.ppm.json").read_text())
    assert report["failures"] == 50


def test_landscape(tmp_path):
    dx = 0.2
    c = POLE + 1e-4
    grid = build_grid((c.real - 5.5 * dx, c.real + 5.5 * dx, c.imag - 5.5 * dx * 0.5, c.imag + 5.5 * dx * 0.5), 11, 11)
    n = render.write_landscape(tmp_path / "l.csv", grid, exact)
    lines = (tmp_path / "l.csv").read_text().splitlines()
    assert lines[0] == "re,im,abs_u,arg_u" and n == 121 and len(lines) == 122
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    assert np.all(rows[:, 3] > -math.pi) and np.all(rows[:, 3] <= math.pi)
    assert np.all(rows[:, 2] <= render.CLIP)
    k = int(np.argmin(np.abs(rows[:, 0] + 1j * rows[:, 1] - POLE)))
    assert rows[k, 2] >= 1e3 * np.median(rows[:, 2])


def test_landscape_clips_poles():
    grid = build_grid((-1, 1, -1, 1), 4, 4)
    rows = render.landscape_rows(grid, lambda z: 1 / (z - grid.xs[1] - 1j * grid.ys[1]) if z != complex(grid.xs[1], grid.ys[1]) else complex(math.inf, 0))
    assert max(r[2] for r in rows) == render.CLIP
