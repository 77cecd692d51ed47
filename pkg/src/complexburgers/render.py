"""Phase portraits (binary PPM) and landscape CSVs.

Colour convention: hue = arg(u)/(2 pi) mod 1 on the HSV wheel at full
saturation and value, so arg u = 0 is red and the colours run red, yellow,
green, cyan, blue, magenta as the argument increases.  This is the
(arg u + pi)/(2 pi) wheel turned by half a revolution (HUE_OFFSET).
Going anticlockwise round a simple zero the colours appear in that order;
round a pole they appear reversed.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .core import Grid2D
from .errors import BurgersError

HUE_OFFSET = 0.5
CLIP = 1e6


@dataclass(frozen=True)
class PhaseImage:
    width: int
    height: int
    pixels: bytes
    failures: int = 0

    def to_ppm(self) -> bytes:
        return b"P6\n%d %d\n255\n" % (self.width, self.height) + self.pixels

    def write(self, path) -> None:
        Path(path).write_bytes(self.to_ppm())

    def rgb(self, row: int, col: int):
        k = 3 * (row * self.width + col)
        return tuple(self.pixels[k:k + 3])


def hue_of(u: complex) -> float:
    return ((math.atan2(u.imag, u.real) + math.pi) / (2 * math.pi) + HUE_OFFSET) % 1.0


def hsv_to_rgb(h: float):
    """Fully saturated, full-value HSV colour as 8-bit RGB."""
    h6 = (h % 1.0) * 6.0
    i = int(h6) % 6
    f = h6 - int(h6)
    q, t = 1.0 - f, f
    r, g, b = [(1, t, 0), (q, 1, 0), (0, 1, t), (0, q, 1), (t, 0, 1), (1, 0, q)][i]
    return int(round(255 * r)), int(round(255 * g)), int(round(255 * b))


def _evaluate(grid: Grid2D, f: Callable[[complex], complex]):
    """Values in row-major order, top row (largest Im) first; NaN on failure."""
    xs, ys = grid.xs, grid.ys[::-1]
    vals = np.full((len(ys), len(xs)), np.nan + 0j)
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            try:
                v = complex(f(complex(x, y)))
            except (BurgersError, ZeroDivisionError, OverflowError):
                continue
            if math.isfinite(v.real) and math.isfinite(v.imag):
                vals[i, j] = v
            elif math.isinf(abs(v)):
                vals[i, j] = complex(CLIP * 10, 0)
    return vals


def render_portrait(grid: Grid2D, f: Callable[[complex], complex]) -> PhaseImage:
    """Colour every pixel by arg f; failed evaluations are black."""
    vals = _evaluate(grid, f)
    buf = bytearray()
    failures = 0
    for v in vals.ravel():
        if not np.isfinite(v):
            buf += b"\x00\x00\x00"
            failures += 1
        else:
            buf += bytes(hsv_to_rgb(hue_of(complex(v))))
    return PhaseImage(grid.nx, grid.ny, bytes(buf), failures)


def write_portrait(path, grid: Grid2D, f, meta: dict | None = None) -> PhaseImage:
    """Write the PPM plus a JSON sidecar report with the failure count."""
    img = render_portrait(grid, f)
    img.write(path)
    report = {"width": img.width, "height": img.height, "failures": img.failures}
    if meta:
        report.update(meta)
    Path(str(path) + ".json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return img


def landscape_rows(grid: Grid2D, f):
    """(re, im, |u| clipped, arg u) for every grid point, row-major from the bottom."""
    xs, ys = grid.xs, grid.ys
    rows = []
    for y in ys:
        for x in xs:
            try:
                v = complex(f(complex(x, y)))
                a = min(abs(v), CLIP) if math.isfinite(abs(v)) else CLIP
                ang = math.atan2(v.imag, v.real) if math.isfinite(abs(v)) else 0.0
                if ang == -math.pi:
                    ang = math.pi
            except (BurgersError, ZeroDivisionError, OverflowError):
                a, ang = CLIP, 0.0
            rows.append((float(x), float(y), a, ang))
    return rows


def write_landscape(path, grid: Grid2D, f) -> int:
    rows = landscape_rows(grid, f)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im", "abs_u", "arg_u"])
        for r in rows:
            w.writerow([format(v, ".17g") for v in r])
    return len(rows)


def winding_of_colours(img: PhaseImage, row: int, col: int, radius: int) -> int:
    """Net number of hue cycles (anticlockwise) on a square ring of pixels.

    +1 around a simple zero, -1 around a simple pole.
    """
    ring = []
    r0, c0 = row, col
    for dc in range(-radius, radius):
        ring.append((r0 + radius, c0 + dc))
    for dr in range(radius, -radius, -1):
        ring.append((r0 + dr, c0 + radius))
    for dc in range(radius, -radius, -1):
        ring.append((r0 - radius, c0 + dc))
    for dr in range(-radius, radius):
        ring.append((r0 + dr, c0 - radius))
    hues = [_rgb_hue(img.rgb(r, c)) for r, c in ring]
    total = 0.0
    for a, b in zip(hues, hues[1:] + hues[:1]):
        d = (b - a + 0.5) % 1.0 - 0.5
        total += d
    return int(round(total))


def _rgb_hue(rgb) -> float:
    r, g, b = (c / 255.0 for c in rgb)
    mx, mn = max(r, g, b), min(r, g, b)
    if mx == mn:
        return 0.0
    d = mx - mn
    if mx == r:
        h = ((g - b) / d) % 6
    elif mx == g:
        h = (b - r) / d + 2
    else:
        h = (r - g) / d + 4
    return h / 6.0


__all__ = ["PhaseImage", "render_portrait", "write_portrait", "write_landscape", "landscape_rows",
           "hue_of", "hsv_to_rgb", "winding_of_colours", "HUE_OFFSET", "CLIP"]
