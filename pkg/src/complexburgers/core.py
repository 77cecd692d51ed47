"""Shared types and conventions.

Complex scalars are plain Python ``complex`` (or numpy ``complex128``).
Branch conventions used throughout the package:

* ``arctan`` is the principal branch with cuts ``(-i*inf, -i]`` and ``[i, i*inf)``.
* fractional powers and logarithms use the principal argument in ``(-pi, pi]``.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidGrid, InvalidInput, RangeError

#: Shock formation point of the inviscid problem.
SHOCK_X = math.sqrt(3.0)
SHOCK_TIME = 8.0 * math.sqrt(3.0) / 9.0

#: Points with |u| above this are treated as "at a pole" by symmetry checks.
POLE_GUARD = 1e6


def as_finite_complex(value, what: str = "value") -> complex:
    """Convert to ``complex`` and reject NaN/inf."""
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise RangeError(f"{what} is not finite: {z!r}")
    return z


@dataclass(frozen=True)
class PhysParams:
    """Viscosity ``mu`` and time ``t`` of Burgers' equation."""

    mu: float
    t: float

    def __post_init__(self):
        if not self.mu > 0:
            raise InvalidInput(f"viscosity must be positive, got {self.mu}")
        if not self.t >= 0:
            raise InvalidInput(f"time must be non-negative, got {self.t}")


@dataclass(frozen=True)
class Grid2D:
    """Uniform cell-centred sampling of a rectangle in the complex plane."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.nx

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / self.ny

    @property
    def xs(self) -> np.ndarray:
        return self.x_min + (np.arange(self.nx) + 0.5) * self.dx

    @property
    def ys(self) -> np.ndarray:
        return self.y_min + (np.arange(self.ny) + 0.5) * self.dy

    def points(self) -> np.ndarray:
        """Row-major complex points: x varies fastest, rows ordered by increasing y."""
        X, Y = np.meshgrid(self.xs, self.ys)
        return (X + 1j * Y).ravel()

    def __len__(self):
        return self.nx * self.ny


def build_grid(bounds: Sequence[float], nx: int, ny: int) -> Grid2D:
    """Build a :class:`Grid2D` from ``(x_min, x_max, y_min, y_max)``."""
    if len(bounds) != 4:
        raise InvalidGrid("bounds must be (x_min, x_max, y_min, y_max)")
    x_min, x_max, y_min, y_max = (float(b) for b in bounds)
    if not all(math.isfinite(b) for b in (x_min, x_max, y_min, y_max)):
        raise InvalidGrid("bounds must be finite")
    if not (x_min < x_max and y_min < y_max):
        raise InvalidGrid(f"unordered bounds {bounds}")
    if int(nx) != nx or int(ny) != ny or nx < 2 or ny < 2:
        raise InvalidGrid("nx and ny must be integers >= 2")
    return Grid2D(x_min, x_max, y_min, y_max, int(nx), int(ny))


def schwarz_reflect(z: complex, u: complex) -> complex:
    """Value of the solution at ``conj(z)`` given ``u = u(z, t)``.

    The initial data is real on the real line, so ``u(conj z) = conj(u(z))``.
    """
    return complex(u).conjugate()


class Method(str, enum.Enum):
    EXACT_ROOT = "ExactRoot"
    SADDLE = "Saddle"
    AAA = "AAA"
    INNER_ASYMPTOTIC = "InnerAsymptotic"
    LARGE_TIME = "LargeTime"


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    z: complex
    residue: complex = complex(math.nan, math.nan)
    converged: bool = True


@dataclass
class PoleTrajectory:
    """Time-ordered estimates of one pole location.

    Samples are kept sorted by increasing ``t`` regardless of the order in which
    a tracker produced them.
    """

    method: Method
    samples: list[TrajectorySample] = field(default_factory=list)
    note: str = ""

    def __post_init__(self):
        self.samples = sorted(self.samples, key=lambda s: s.t)
        ts = [s.t for s in self.samples]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise InvalidInput("trajectory times must be strictly monotone")
        for s in self.samples:
            if s.converged and not (math.isfinite(s.z.real) and math.isfinite(s.z.imag)):
                raise InvalidInput("converged sample with non-finite location")

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    @property
    def locations(self) -> np.ndarray:
        return np.array([s.z for s in self.samples], dtype=complex)

    @property
    def converged(self) -> np.ndarray:
        return np.array([s.converged for s in self.samples], dtype=bool)

    def good(self) -> "PoleTrajectory":
        """Only the converged samples."""
        return PoleTrajectory(self.method, [s for s in self.samples if s.converged], self.note)

    def at(self, t: float) -> complex:
        """Linear interpolation of the (converged) path at time ``t``."""
        g = self.good()
        ts, zs = g.times, g.locations
        if len(ts) == 0 or t < ts[0] - 1e-12 or t > ts[-1] + 1e-12:
            raise InvalidInput(f"t={t} outside trajectory span")
        return complex(np.interp(t, ts, zs.real) + 1j * np.interp(t, ts, zs.imag))

    def conj(self) -> "PoleTrajectory":
        return PoleTrajectory(
            self.method,
            [TrajectorySample(s.t, s.z.conjugate(), complex(s.residue).conjugate(), s.converged)
             for s in self.samples],
            self.note,
        )

    def to_csv(self, path) -> None:
        """Write ``t,re,im,residue_re,residue_im,converged`` rows."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "re", "im", "residue_re", "residue_im", "converged"])
            for s in self.samples:
                r = complex(s.residue)
                w.writerow([_g17(s.t), _g17(s.z.real), _g17(s.z.imag),
                            _g17(r.real), _g17(r.imag), int(s.converged)])

    @classmethod
    def from_csv(cls, path, method: Method) -> "PoleTrajectory":
        samples = []
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                samples.append(TrajectorySample(
                    float(row["t"]), complex(float(row["re"]), float(row["im"])),
                    complex(float(row["residue_re"]), float(row["residue_im"])),
                    bool(int(row["converged"]))))
        return cls(method, samples)


def sup_distance(a: PoleTrajectory, b: PoleTrajectory, t_min: float, t_max: float,
                 times: Iterable[float] | None = None) -> float:
    """Largest |a(t) - b(t)| over sample times of ``a`` inside ``[t_min, t_max]``."""
    if times is None:
        times = [t for t in a.good().times if t_min - 1e-12 <= t <= t_max + 1e-12]
    return max(abs(a.at(t) - b.at(t)) for t in times)


def _g17(x: float) -> str:
    return format(float(x), ".17g")
