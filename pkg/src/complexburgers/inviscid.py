"""The zero-viscosity problem: characteristics, branch points and shock formation.

Writing ``zeta = z - u t`` for the foot of a characteristic, branch points of
the implicit solution ``u = 1/(1 + zeta^2)`` are where ``dz/dzeta = 0``, i.e.

    (1 + zeta^2)^2 = 2 t zeta,

a quartic in ``zeta``.  It is solved here in closed form (Ferrari) and each
root polished by a couple of Newton steps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import SHOCK_TIME, SHOCK_X
from .errors import ConvergenceError, InvalidInput, MultivaluedRegion

#: steepest initial slope of 1/(1+x^2), at x = 1/sqrt(3)
MAX_INITIAL_SLOPE = 3.0 * math.sqrt(3.0) / 8.0


@dataclass(frozen=True)
class BranchPoints:
    t: float
    points: tuple
    u_values: tuple

    def __len__(self):
        return len(self.points)


def _u0(x):
    return 1.0 / (1.0 + x * x)


def _du0(x):
    return -2.0 * x / (1.0 + x * x) ** 2


def characteristics_u(x: float, t: float) -> float:
    """Single-valued inviscid solution at real ``x`` by Newton on the foot point."""
    x, t = float(x), float(t)
    if t < 0:
        raise InvalidInput("t must be non-negative")
    if t == 0:
        return _u0(x)
    # u solves t^2 u^3 - 2 x t u^2 + (1 + x^2) u - 1 = 0
    roots = np.roots([t * t, -2 * x * t, 1 + x * x, -1.0])
    real = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1, np.abs(roots))].real
    if len(real) > 1 and np.ptp(real) > 1e-7:
        raise MultivaluedRegion(f"three characteristics reach x={x} at t={t}")
    u = _u0(x)
    for _ in range(100):
        xi = x - u * t
        g = u - _u0(xi)
        dg = 1.0 + t * _du0(xi)
        step = g / dg
        # keep the iterate inside the physical range (0, 1]
        new = min(max(u - step, 1e-300), 1.0)
        if abs(new - u) <= 1e-15 * max(1.0, abs(u)):
            return new
        u = new
    raise ConvergenceError(f"characteristics Newton failed at x={x}, t={t}")


def characteristics_slope(x: float, t: float) -> float:
    """u_x = u0'(xi) / (1 + t u0'(xi)) along the characteristic through ``x``."""
    u = characteristics_u(x, t)
    d = _du0(x - u * t)
    return d / (1.0 + t * d)


def max_slope(t: float):
    """(x, |u_x|) of the steepest point for t < shock time.

    The steepest characteristic starts from x = 1/sqrt(3), where u0' is most
    negative, so the extremum is available in closed form.
    """
    if not 0 <= t < SHOCK_TIME:
        raise MultivaluedRegion("steepest slope is finite only before the shock time")
    x0 = 1.0 / math.sqrt(3.0)
    x = x0 + _u0(x0) * t
    return x, MAX_INITIAL_SLOPE / (1.0 - MAX_INITIAL_SLOPE * t)


def _ferrari(a3, a2, a1, a0):
    """Roots of x^4 + a3 x^3 + a2 x^2 + a1 x + a0 by Ferrari's resolvent."""
    # depressed quartic y^4 + p y^2 + q y + r with x = y - a3/4
    s = a3 / 4
    p = a2 - 6 * s * s
    q = a1 - 2 * a2 * s + 8 * s**3
    r = a0 - a1 * s + a2 * s * s - 3 * s**4
    if abs(q) < 1e-300:
        # biquadratic
        d = cmath.sqrt(p * p - 4 * r)
        ys = []
        for w in ((-p + d) / 2, (-p - d) / 2):
            rt = cmath.sqrt(w)
            ys += [rt, -rt]
        return [y - s for y in ys]
    # resolvent cubic for m: 8 m^3 + 8 p m^2 + (2 p^2 - 8 r) m - q^2 = 0
    m = _cubic_root(8.0, 8 * p, 2 * p * p - 8 * r, -q * q)
    sq = cmath.sqrt(2 * m)
    ys = []
    for sgn in (1, -1):
        disc = cmath.sqrt(-(2 * p + 2 * m + sgn * 2 * q / sq))
        ys += [(sgn * sq + disc) / 2, (sgn * sq - disc) / 2]
    return [y - s for y in ys]


def _cubic_root(a, b, c, d):
    """One root (the Cardano one with the largest modulus of 2m) of a cubic."""
    b, c, d = b / a, c / a, d / a
    p = c - b * b / 3
    q = 2 * b**3 / 27 - b * c / 3 + d
    disc = cmath.sqrt(q * q / 4 + p**3 / 27)
    u = (-q / 2 + disc) ** (1 / 3) if abs(-q / 2 + disc) >= abs(-q / 2 - disc) else (-q / 2 - disc) ** (1 / 3)
    best = None
    for k in range(3):
        uk = u * cmath.exp(2j * math.pi * k / 3)
        root = uk - p / (3 * uk) - b / 3 if uk != 0 else -b / 3
        if best is None or abs(root) > abs(best):
            best = root
    return best


def quartic_coefficients(t: float):
    """Monic quartic in zeta: zeta^4 + 2 zeta^2 - 2 t zeta + 1."""
    return (0.0, 2.0, -2.0 * t, 1.0)


def _polish(zeta, t):
    for _ in range(4):
        f = zeta**4 + 2 * zeta**2 - 2 * t * zeta + 1
        df = 4 * zeta**3 + 4 * zeta - 2 * t
        if df == 0:
            break
        zeta -= f / df
    return zeta


def branch_points(t: float) -> BranchPoints:
    """Upper-half-plane branch points of the inviscid solution at time ``t``."""
    t = float(t)
    if not t > 0:
        raise InvalidInput("branch points are defined for t > 0")
    zetas = [_polish(complex(r), t) for r in _ferrari(*quartic_coefficients(t))]
    pts, us = [], []
    for zeta in zetas:
        u = 1.0 / (1.0 + zeta * zeta)
        z = zeta + u * t
        if z.imag >= -1e-12:
            pts.append(complex(z.real, max(z.imag, 0.0)))
            us.append(u)
    order = np.argsort([z.imag for z in pts])
    return BranchPoints(t, tuple(pts[k] for k in order), tuple(us[k] for k in order))


def small_time_branch_points(t: float):
    """Small-time law z = i +- (1 - i) sqrt(t) + t/4 + O(t^(3/2)).

    Expanding the quartic with zeta = i + a sqrt(t) + b t gives a^2 = -i/2 and
    b = 0; the t/4 then comes from u t = t/(2i(zeta - i)) + t/4.  Both
    branches carry the same O(t) coefficient.
    """
    r = (1 - 1j) * math.sqrt(t)
    return 1j + r + t / 4, 1j - r + t / 4


def system_residual(z: complex, u: complex, t: float):
    """Residuals of u = 1/(1+(z-ut)^2) and 1 = 2t(z-ut)/(1+(z-ut)^2)^2."""
    zeta = z - u * t
    w = 1 + zeta * zeta
    return abs(u - 1 / w), abs(1 - 2 * t * zeta / (w * w))


__all__ = ["BranchPoints", "characteristics_u", "characteristics_slope", "max_slope",
           "branch_points", "small_time_branch_points", "system_residual",
           "quartic_coefficients", "SHOCK_TIME", "SHOCK_X"]
