"""Exact solution of the viscous problem through the Cole-Hopf integrals.

With ``h(s) = -arctan(s)/2 - (z - s)^2/(4t)`` the solution is

    u(z, t) = N/D,   D = int exp(h(s)/mu) ds,   N = int (z - s)/t exp(h(s)/mu) ds.

Both integrals are evaluated after the shift ``s = z + c*sb`` with
``c = 2 sqrt(mu t)``, which turns the Gaussian factor into ``exp(-sb^2)``.
The arctan factor has branch points at ``sb = (+-i - z)/c``; when the upper one
comes close to or crosses the real ``sb`` axis (Im z near or above 1) the
path is pushed down underneath it.  For Im z < 0 the Schwarz reflection
``D(conj z) = conj D(z)`` is used, so conjugate symmetry holds exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PhysParams, as_finite_complex
from .errors import (BranchCutError, DenominatorZero, IntegrandBlowup, InvalidInput,
                     NearPole, RangeError, TooCloseToSingularity)
from .quadrature import (MAX_HERMITE, MAX_LEGENDRE, Contour, contour_nodes,
                         gauss_hermite_rule, gauss_legendre_rule)
from .specfun import on_arctan_cut

#: |D| relative to the largest integrand magnitude below which u is not evaluated
NEAR_POLE_THRESHOLD = 1e-290
#: guard on |1 + z^2| for the small-time series
SERIES_GUARD = 0.1


@dataclass(frozen=True)
class EvalOptions:
    """Quadrature settings for the Cole-Hopf integrals.

    ``panels=None`` doubles the composite panel count until successive
    estimates agree to ``rtol`` (relative to the integral of |integrand|);
    a fixed count makes the result a smooth function of z, which is what
    finite-difference derivatives need.  ``rule="hermite"`` switches the
    straight-contour case to a single Gauss-Hermite rule.
    """

    hermite_order: int = 200
    legendre_order: int = 48
    deform_margin: float = 0.5
    deform_halfwidth: float = 1.0
    panels: int | None = None
    rtol: float = 1e-13
    max_panels: int = 2048
    rule: str = "legendre"

    def __post_init__(self):
        if not 1 <= self.legendre_order <= MAX_LEGENDRE:
            raise InvalidInput("legendre_order out of range")
        if not 1 <= self.hermite_order <= MAX_HERMITE:
            raise InvalidInput("hermite_order out of range")
        if not self.deform_margin > 0 or not self.deform_halfwidth > 0:
            raise InvalidInput("deformation sizes must be positive")
        if self.rule not in ("legendre", "hermite"):
            raise InvalidInput(f"unknown rule {self.rule!r}")


DEFAULT_OPTIONS = EvalOptions()


def _scale(p: PhysParams) -> float:
    return 2.0 * math.sqrt(p.mu * p.t)


def truncation_radius(mu: float) -> float:
    # the arctan factor can vary by exp(pi/(2 mu)) across the line; the
    # Gaussian tail has to beat that by another 1e-18
    return math.sqrt(42.0 + math.pi / (2.0 * mu)) + 1.0


def integration_path(z: complex, p: PhysParams, opts: EvalOptions = DEFAULT_OPTIONS) -> Contour:
    """Path in the scaled variable ``sb`` for a point with Im z >= 0."""
    c = _scale(p)
    R = truncation_radius(p.mu)
    b = (1j - z) / c
    margin = min(opts.deform_margin, 1.0 / c)
    if b.imag >= margin:
        verts = [-R, R]
    else:
        w = opts.deform_halfwidth
        y = b.imag - margin
        verts = [min(-R, b.real - w - 1.0), complex(b.real - w, y),
                 complex(b.real + w, y), max(R, b.real + w + 1.0)]
    for v in verts:
        if on_arctan_cut(z + c * v):
            raise BranchCutError(f"contour vertex {z + c * v} lies on the arctan cut")
    return Contour(verts)


def _exponent(sb: np.ndarray, z: complex, p: PhysParams, c: float) -> np.ndarray:
    return -np.arctan(z + c * sb) / (2.0 * p.mu) - sb * sb


def _sums(z: complex, p: PhysParams, opts: EvalOptions, panels: int):
    """Scaled (D, M1, mass, log scale) at a fixed panel count.

    D = c exp(L) * Sd, N = -(c^2/t) exp(L) * M1 with Sd, M1 the returned sums.
    """
    c = _scale(p)
    if opts.rule == "hermite" and panels == 0:
        rule = gauss_hermite_rule(opts.hermite_order)
        sb = np.asarray(rule.nodes, dtype=complex)
        w = np.asarray(rule.weights, dtype=complex)
        E = -np.arctan(z + c * sb) / (2.0 * p.mu)
    else:
        path = integration_path(z, p, opts)
        sb, w = contour_nodes(path, gauss_legendre_rule(opts.legendre_order), panels)
        E = _exponent(sb, z, p, c)
    if not np.all(np.isfinite(E)):
        bad = int(np.argmax(~np.isfinite(E)))
        raise IntegrandBlowup(f"non-finite integrand at s={z + c * sb[bad]}", node=complex(z + c * sb[bad]))
    L = float(np.max(E.real))
    f = w * np.exp(E - L)
    return complex(np.sum(f)), complex(np.sum(sb * f)), float(np.sum(np.abs(f))), L


def _integrals(z: complex, p: PhysParams, opts: EvalOptions):
    """(Sd, M1, mass, L) for Im z >= 0 with convergence handling."""
    if opts.rule == "hermite":
        if (1j - z).imag / _scale(p) < opts.deform_margin:
            raise InvalidInput("the Gauss-Hermite route needs the straight contour (Im z well below 1)")
        return _sums(z, p, opts, 0)
    if opts.panels is not None:
        return _sums(z, p, opts, opts.panels)
    panels = 8
    prev = _sums(z, p, opts, panels)
    while panels < opts.max_panels:
        panels *= 2
        cur = _sums(z, p, opts, panels)
        # bring the previous estimate onto the current log scale
        r = math.exp(prev[3] - cur[3])
        tol = opts.rtol * cur[2]
        if abs(cur[0] - r * prev[0]) <= tol and abs(cur[1] - r * prev[1]) <= tol:
            return cur
        prev = cur
    return prev


def _check(z, p):
    z = as_finite_complex(z, "z")
    if not p.t > 0:
        raise InvalidInput("the integral representation needs t > 0")
    return z


def log_denominator(z: complex, p: PhysParams, opts: EvalOptions = DEFAULT_OPTIONS):
    """D as ``(mantissa, log_scale)`` with D = mantissa * exp(log_scale)."""
    z = _check(z, p)
    flip = z.imag < 0
    zz = z.conjugate() if flip else z
    sd, _, _, L = _integrals(zz, p, opts)
    m = _scale(p) * sd
    return (m.conjugate() if flip else m), L


def denominator(z: complex, p: PhysParams, opts: EvalOptions = DEFAULT_OPTIONS) -> complex:
    """D(z, t; mu) = integral of exp(h(s)/mu) over the real s-line."""
    m, L = log_denominator(z, p, opts)
    if L > 700:
        raise RangeError(f"D overflows (log scale {L:.1f})")
    return m * math.exp(L)


def evaluate_u(z: complex, p: PhysParams, opts: EvalOptions = DEFAULT_OPTIONS) -> complex:
    """u(z, t) = N/D with both integrals taken on the same path."""
    z = _check(z, p)
    flip = z.imag < 0
    zz = z.conjugate() if flip else z
    sd, m1, mass, _ = _integrals(zz, p, opts)
    if abs(sd) <= NEAR_POLE_THRESHOLD * max(mass, 1e-300):
        raise NearPole(f"D vanishes to working precision at z={z}")
    u = -_scale(p) / p.t * m1 / sd
    return u.conjugate() if flip else u


def newton_step(z: complex, p: PhysParams, opts: EvalOptions = DEFAULT_OPTIONS) -> complex:
    """Newton correction -D/D' for a zero of D.

    Differentiating under the integral gives D' = -N/(2 mu), so the Newton
    update is simply 2 mu / u(z).
    """
    u = evaluate_u(z, p, opts)
    if u == 0:
        raise DenominatorZero("u vanishes, Newton step undefined")
    return 2.0 * p.mu / u


def evaluate_u_and_slope(z: complex, p: PhysParams, opts: EvalOptions = DEFAULT_OPTIONS):
    """(u, du/dz) from the same quadrature nodes.

    In the shifted variable only the arctan factor depends on z, so
    differentiating under the integral multiplies the integrand by
    -1/(2 mu (1 + s^2)).
    """
    z = _check(z, p)
    flip = z.imag < 0
    zz = z.conjugate() if flip else z
    path = integration_path(zz, p, opts)
    c = _scale(p)
    panels = opts.panels or 8
    prev = None
    while True:
        sb, w = contour_nodes(path, gauss_legendre_rule(opts.legendre_order), panels)
        s = zz + c * sb
        E = _exponent(sb, zz, p, c)
        f = w * np.exp(E - float(np.max(E.real)))
        g = -f / (2.0 * p.mu * (1.0 + s * s))
        m = np.array([np.sum(f), np.sum(sb * f), np.sum(g), np.sum(sb * g)])
        mass = float(np.sum(np.abs(f)))
        L = float(np.max(E.real))
        if opts.panels is not None or panels >= opts.max_panels:
            break
        if prev is not None and np.all(np.abs(m - prev[0] * math.exp(prev[1] - L)) <= opts.rtol * mass * 10):
            break
        prev = (m, L)
        panels *= 2
    d0, n0, d1, n1 = m
    if abs(d0) <= NEAR_POLE_THRESHOLD * mass:
        raise NearPole(f"D vanishes to working precision at z={z}")
    k = -c / p.t
    u = k * n0 / d0
    ux = k * (n1 * d0 - n0 * d1) / (d0 * d0)
    if flip:
        return u.conjugate(), ux.conjugate()
    return complex(u), complex(ux)


def residue_probe(z_star: complex, p: PhysParams, radius: float = 1e-3, n: int = 64,
                  opts: EvalOptions = DEFAULT_OPTIONS) -> complex:
    """(1/2 pi i) times the integral of u around a circle about ``z_star``."""
    th = 2 * np.pi * np.arange(n) / n
    pts = z_star + radius * np.exp(1j * th)
    vals = np.array([evaluate_u(q, p, opts) for q in pts])
    # dz = i r e^{i th} dth; trapezoid is spectrally accurate on a circle
    return complex(np.mean(vals * radius * np.exp(1j * th)))


def u_grid(points, p: PhysParams, opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """Evaluate u at many points; failures come back as NaN."""
    out = np.full(len(points), np.nan + 0j)
    for k, z in enumerate(points):
        try:
            out[k] = evaluate_u(z, p, opts)
        except (NearPole, IntegrandBlowup, BranchCutError, RangeError):
            pass
    return out


# ----------------------------------------------------------- small-time forms

def _u1(z, mu):
    return 2 * (-mu + z + 3 * mu * z * z) / (1 + z * z) ** 3


def _u2(z, mu):
    z2 = z * z
    num = 60 * mu**2 * z2 * z2 - 32 * mu * z + 48 * mu * z * z2 - z2 * (120 * mu**2 - 7) + 12 * mu**2 - 1
    return num / (1 + z2) ** 5


def naive_series(z: complex, p: PhysParams) -> complex:
    """Three terms of the regular small-time expansion u0 + t u1 + t^2 u2."""
    z = as_finite_complex(z, "z")
    if abs(1 + z * z) <= SERIES_GUARD:
        raise TooCloseToSingularity(f"|1+z^2| = {abs(1 + z * z):.3g} too small")
    u0 = 1 / (1 + z * z)
    return u0 + p.t * _u1(z, p.mu) + p.t**2 * _u2(z, p.mu)


def saddle_series(z: complex, p: PhysParams) -> complex:
    """Two-term closed form obtained from the steepest-descent series at s = z."""
    z = as_finite_complex(z, "z")
    if abs(z.imag) >= 1:
        raise InvalidInput("the closed form holds only for |Im z| < 1")
    mu, t = p.mu, p.t
    d1 = 1 + z * z
    d2 = 4 * mu * z**4 + 8 * mu * z**2 + 4 * mu * t * z + 4 * mu + t
    if abs(d1) < 1e-14 or abs(d2) < 1e-14:
        raise DenominatorZero("closed form denominator vanishes")
    return (1 + 8 * mu * z) / d1 - 8 * mu**2 * (4 * z**3 + 4 * z + t) / d2


def is_in_deformed_region(z: complex, p: PhysParams, opts: EvalOptions = DEFAULT_OPTIONS) -> bool:
    """True when the integration path has to pass below the branch point."""
    zz = complex(z)
    zz = zz.conjugate() if zz.imag < 0 else zz
    c = _scale(p)
    return ((1j - zz) / c).imag < min(opts.deform_margin, 1.0 / c)


__all__ = [
    "EvalOptions", "denominator", "log_denominator", "evaluate_u", "evaluate_u_and_slope", "newton_step",
    "residue_probe", "u_grid", "naive_series", "saddle_series", "integration_path",
    "truncation_radius", "is_in_deformed_region",
]
