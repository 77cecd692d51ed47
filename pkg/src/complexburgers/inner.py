"""Small-time inner problem near z = i.

In the variable ``xi = (z - i)/t^(1/2)`` the leading-order inner solution
``Phi0`` obeys the Riccati equation

    Phi0^2 - xi Phi0 = 2 mu Phi0' + i/2,    Phi0 ~ -i/(2 xi) as xi -> -i inf,

whose solution is a ratio of parabolic cylinder functions.  This module
evaluates it, locates its poles, and provides the large-|xi| predictions for
where the poles sit.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (ConvergenceError, InvalidInput, NearPole, NotAPole, SectorBoundary,
                     ValidityRange)
from .specfun import loggamma_c, pcf_u, rgamma_c

#: lower end of the viscosity band where double precision is trustworthy
MU_MIN = 0.05
MU_MAX = 5.0
FARFIELD_MIN_ABS = 5.0
SECTOR_TOL = 1e-3


class Quadrant(str, enum.Enum):
    FIRST = "First"
    SECOND = "Second"


class PoleSource(str, enum.Enum):
    ROOT_FIND = "RootFind"
    TRANSCENDENTAL = "Transcendental"


class StokesRegion(str, enum.Enum):
    BELOW_ANTI_STOKES = "BelowAntiStokes"
    BETWEEN_WEDGE = "BetweenWedge"


@dataclass(frozen=True)
class InnerPole:
    xi: complex
    n: int
    quadrant: Quadrant
    source: PoleSource


def _check_mu(mu, strict=True):
    if not mu > 0:
        raise InvalidInput("mu must be positive")
    if strict and not (MU_MIN <= mu <= MU_MAX):
        raise ValidityRange(f"mu={mu} outside the double-precision band [{MU_MIN}, {MU_MAX}]")


def _pcf_args(mu):
    a = 0.5 - 0.25j / mu
    return a, 1.0 / math.sqrt(2.0 * mu)


def phi0_parts(xi: complex, mu: float, strict: bool = True):
    """Numerator and denominator U values and a relative error estimate."""
    _check_mu(mu, strict)
    a, k = _pcf_args(mu)
    w = 1j * complex(xi) * k
    num = pcf_u(a, w)
    den = pcf_u(a - 1, w)
    rel = num.est_error / max(abs(num.value), 1e-300) + den.est_error / max(abs(den.value), 1e-300)
    return num.value, den.value, rel


def phi0(xi: complex, mu: float, strict: bool = True) -> complex:
    """Leading-order inner solution

        Phi0 = U(1/2 - i/(4 mu), w) / (2 sqrt(2 mu) U(-1/2 - i/(4 mu), w)),  w = i xi / sqrt(2 mu).
    """
    num, den, _ = phi0_parts(xi, mu, strict)
    if abs(den) <= 1e-14 * max(abs(num), 1e-300):
        raise NearPole(f"Phi0 denominator vanishes at xi={xi}")
    return num / (2.0 * math.sqrt(2.0 * mu) * den)


def phi0_derivative(xi: complex, mu: float, value: complex | None = None) -> complex:
    """Phi0' from the Riccati equation itself."""
    p = phi0(xi, mu) if value is None else value
    return (p * p - xi * p - 0.5j) / (2.0 * mu)


def riccati_residual(f, xi: complex, mu: float, h: float = 1e-5) -> complex:
    """Phi^2 - xi Phi - 2 mu Phi' - i/2 with Phi' by central differences."""
    p = f(xi)
    dp = (f(xi + h) - f(xi - h)) / (2 * h)
    return p * p - xi * p - 2 * mu * dp - 0.5j


# --------------------------------------------------------------- Kummer route

def phi0_kummer(xi: complex, mu: float) -> complex:
    """Phi0 from the Kummer-U form with principal branches.

    Agrees with :func:`phi0` for Im xi < 0 (the half plane where the far-field
    condition is imposed); elsewhere the principal branch of -xi^2 picks a
    different solution of the Riccati equation.
    """
    from .specfun import kummer_u

    xi = complex(xi)
    a = -0.125j / mu
    zeta = -xi * xi / (4 * mu)
    n = kummer_u(1 + a, 1.5, zeta)
    d = kummer_u(a, 0.5, zeta)
    # -2 mu g'/g with g(zeta(xi)): dU(a,b,zeta)/dzeta = -a U(a+1,b+1,zeta), dzeta/dxi = -xi/(2 mu)
    return -xi * a * n.value / d.value


# ------------------------------------------------------------- local pole data

def residue_probe(f, center: complex, radius: float = 1e-3, n: int = 64) -> complex:
    """(1/2 pi i) times the integral of f around a small circle."""
    th = 2 * np.pi * np.arange(n) / n
    e = np.exp(1j * th)
    vals = np.array([f(center + radius * q) for q in e])
    return complex(np.mean(vals * radius * e))


def phi0_local_pole(xi_s: complex, mu: float):
    """(residue, constant, linear) coefficients of Phi0 about a pole ``xi_s``.

    The pole is first checked with a contour probe; the coefficients are

        -2 mu,   xi_s / 2,   (8 mu - xi_s^2 - 2 i) / (24 mu).

    Substituting the Laurent series into the Riccati equation, the O(1)
    balance gives -6 mu c = xi_s^2/4 - 2 mu + i/2 for the linear coefficient c.
    """
    xi_s = complex(xi_s)
    r = residue_probe(lambda q: phi0(q, mu), xi_s, radius=1e-3)
    if abs(r + 2 * mu) > 0.05 * 2 * mu:
        raise NotAPole(f"residue probe {r} is not -2 mu at xi={xi_s}")
    return -2 * mu, xi_s / 2, (8 * mu - xi_s * xi_s - 2j) / (24 * mu)


def find_pole(seed: complex, mu: float, tol: float = 1e-12, maxit: int = 60,
              max_step: float = 0.5, strict: bool = True) -> complex:
    """Newton on g = 1/Phi0 (zeros of g are poles of Phi0).

    The Riccati equation gives g' = (i/2 g^2 + xi g - 1)/(2 mu) exactly, so
    no numerical differentiation is needed.
    """
    xi = complex(seed)
    _check_mu(mu, strict)
    a, k = _pcf_args(mu)
    c = 2.0 * math.sqrt(2.0 * mu)
    prev = math.inf
    for _ in range(maxit):
        w = 1j * xi * k
        n, d = pcf_u(a, w), pcf_u(a - 1, w)
        num, den = n.value, d.value
        if num == 0:
            raise ConvergenceError("Phi0 has a zero here; 1/Phi0 is singular")
        g = c * den / num
        dg = (0.5j * g * g + xi * g - 1.0) / (2.0 * mu)
        if dg == 0:
            raise ConvergenceError("zero derivative in pole Newton")
        step = g / dg
        if abs(step) > max_step:
            step *= max_step / abs(step)
        xi -= step
        size = abs(step)
        if size <= tol * max(1.0, abs(xi)):
            return xi
        # at small mu the U values carry ~1e-9 relative error, so Newton
        # stalls on a noise floor above tol; accept once the steps stop
        # shrinking inside that floor
        noise = 10.0 * (n.est_error / abs(num) + d.est_error / max(abs(den), 1e-300) * abs(g))
        if size <= max(noise, tol) * max(1.0, abs(xi)) * 100 and size >= 0.5 * prev:
            return xi
        prev = size
    raise ConvergenceError(f"pole Newton from {seed} did not converge (mu={mu})")


# ------------------------------------------------------------------ far field

def alpha(mu: float) -> float:
    """Phase alpha with 1/Gamma(-i/(4 mu)) = |1/Gamma| exp(-i alpha)."""
    return loggamma_c(-0.25j / mu).imag


def antistokes_modulus(mu: float, quadrant: Quadrant | str = Quadrant.FIRST) -> float:
    """Leading |Phi0| on an anti-Stokes ray: 2 sqrt(mu pi) e^(+-pi/(8 mu)) / |Gamma(-i/(4 mu))|.

    The + sign belongs to arg xi = pi/4 and the - sign to arg xi = 3 pi/4.
    """
    sgn = 1.0 if Quadrant(quadrant) is Quadrant.FIRST else -1.0
    return 2 * math.sqrt(mu * math.pi) * math.exp(sgn * math.pi / (8 * mu)) * abs(rgamma_c(-0.25j / mu))


def phi0_farfield(xi: complex, mu: float, strict: bool = False) -> complex:
    """Leading large-|xi| behaviour of Phi0, chosen by sector.

    ``strict=True`` refuses points within 1e-3 rad of an anti-Stokes ray
    instead of using the oscillatory anti-Stokes form there.
    """
    xi = complex(xi)
    r = abs(xi)
    if r < FARFIELD_MIN_ABS:
        raise InvalidInput(f"|xi| = {r:.3g} is below the far-field threshold {FARFIELD_MIN_ABS}")
    th = cmath.phase(xi)
    ig = rgamma_c(-0.25j / mu)
    pref = 2 * math.sqrt(mu * math.pi) * 1j * ig
    for ray, sign in ((math.pi / 4, 1), (3 * math.pi / 4, -1)):
        if abs(th - ray) <= SECTOR_TOL:
            if strict:
                raise SectorBoundary(f"arg xi = {th:.6f} sits on an anti-Stokes ray")
            if sign > 0:
                return pref * math.exp(math.pi / (8 * mu)) * cmath.exp(
                    -1j * (r * r + 2 * math.log(r) - math.log(2 * mu)) / (4 * mu))
            return pref * math.exp(-math.pi / (8 * mu)) * cmath.exp(
                1j * (r * r - 2 * math.log(r) + math.log(2 * mu)) / (4 * mu))
    if math.pi / 4 < th < 3 * math.pi / 4:
        return xi
    return -0.5j / xi


def _rhs(rho, mu):
    return math.log(rho) - math.pi / (8 * mu) - 0.5 * _log_sinh(math.pi / (4 * mu))


def _log_sinh(x):
    # log(sinh x) without overflow for large x
    return x + math.log1p(-math.exp(-2 * x)) - math.log(2.0)


def pole_path_angle(rho: float, quadrant: Quadrant | str, mu: float) -> float:
    """Asymptotic angle of the pole array at radius ``rho``."""
    q = Quadrant(quadrant)
    if rho < 2:
        raise InvalidInput("the path law needs rho >= 2")
    if q is Quadrant.FIRST:
        return math.pi / 4 + 2 * mu / (rho * rho + 1) * _rhs(rho, mu)
    return 3 * math.pi / 4 + 2 * mu / (rho * rho - 1) * (
        -math.log(rho) - math.pi / (8 * mu) + 0.5 * _log_sinh(math.pi / (4 * mu)))


def _phase_first(rho, mu, al):
    return (rho * rho + 2 * math.log(rho) - math.log(2 * mu)) / (4 * mu) - math.pi / 4 + al


def _phase_second(rho, mu, al):
    return (2 * math.log(rho) - rho * rho - math.log(2 * mu)) / (4 * mu) + math.pi / 4 + al


def transcendental_residual(rho: float, mu: float, quadrant: Quadrant | str) -> float:
    """Left minus right side of the quadrant's modulus equation (tan form)."""
    q = Quadrant(quadrant)
    al = alpha(mu)
    if q is Quadrant.FIRST:
        lhs = -(rho * rho + 1) / (2 * mu) * math.tan(_phase_first(rho, mu, al))
    else:
        lhs = (rho * rho - 1) / (2 * mu) * math.tan(_phase_second(rho, mu, al))
    return lhs - _rhs(rho, mu)


def pole_moduli(mu: float, n_max: int, quadrant: Quadrant | str = Quadrant.FIRST):
    """Moduli |xi_n| from the quadrant's transcendental equation, n = 1..n_max.

    The tan equation is solved in its unwrapped form

        phase(rho) = k pi + arctan(c(rho)),

    where ``k`` is the odd integer nearest the seed |xi|^2 = 8 n mu pi; this
    keeps Newton away from the poles of tan.  Entries that fail are reported as NaN.
    """
    q = Quadrant(quadrant)
    if not 1 <= n_max <= 50:
        raise InvalidInput("n_max must be in [1, 50]")
    al = alpha(mu)
    if q is Quadrant.FIRST:
        phase = lambda r: _phase_first(r, mu, al)
        small = lambda r: math.atan(-2 * mu * _rhs(r, mu) / (r * r + 1))
        dphase = lambda r: (2 * r + 2 / r) / (4 * mu)
    else:
        phase = lambda r: _phase_second(r, mu, al)
        small = lambda r: math.atan(2 * mu * _rhs(r, mu) / (r * r - 1))
        dphase = lambda r: (2 / r - 2 * r) / (4 * mu)
    out = []
    for n in range(1, n_max + 1):
        rho = math.sqrt(8 * n * mu * math.pi)
        if q is Quadrant.SECOND and rho <= 1.0:
            out.append(float("nan"))
            continue
        # the cosine in the pole condition must be close to -1, so only odd
        # multiples of pi are admissible
        k = 2 * round(((phase(rho) - small(rho)) / math.pi - 1) / 2) + 1
        ok = False
        for _ in range(60):
            f = phase(rho) - small(rho) - k * math.pi
            h = 1e-7 * rho
            df = dphase(rho) - (small(rho + h) - small(rho - h)) / (2 * h)
            step = f / df
            rho_new = rho - step
            if rho_new <= 1.0:
                rho_new = 0.5 * (rho + 1.0)
            if abs(rho_new - rho) <= 1e-14 * rho:
                rho = rho_new
                ok = True
                break
            rho = rho_new
        out.append(rho if ok else float("nan"))
    return out


def predicted_poles(mu: float, n_max: int, quadrant: Quadrant | str = Quadrant.FIRST):
    """Transcendental moduli placed on the asymptotic path, as InnerPole records."""
    q = Quadrant(quadrant)
    poles = []
    for n, rho in enumerate(pole_moduli(mu, n_max, q), start=1):
        if not math.isfinite(rho) or rho < 2:
            continue
        th = pole_path_angle(rho, q, mu)
        poles.append(InnerPole(rho * cmath.exp(1j * th), n, q, PoleSource.TRANSCENDENTAL))
    return poles


# --------------------------------------------------------------- lowest pole

def _box_minima(f, x0, x1, y0, y1, n=60):
    xs = np.linspace(x0, x1, n)
    ys = np.linspace(y0, y1, n)
    vals = np.full((n, n), np.inf)
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            try:
                vals[i, j] = abs(f(complex(x, y)))
            except Exception:
                pass
    seeds = []
    for i in range(1, n - 1):
        for j in range(1, n - 1):
            v = vals[i, j]
            if np.isfinite(v) and v <= vals[i - 1:i + 2, j - 1:j + 2].min():
                seeds.append(complex(xs[j], ys[i]))
    return seeds


def poles_in_box(mu: float, box=(-6.0, 6.0, -3.0, 6.0), n: int = 60):
    """Poles of Phi0 found by Newton from local minima of |1/Phi0| on a grid."""
    x0, x1, y0, y1 = box
    g = lambda q: 1.0 / phi0(q, mu)
    found = []
    for s in _box_minima(g, x0, x1, y0, y1, n):
        try:
            p = find_pole(s, mu, max_step=0.2)
        except Exception:
            continue
        if x0 <= p.real <= x1 and y0 <= p.imag <= y1 and all(abs(p - q) > 1e-6 for q in found):
            found.append(p)
    return sorted(found, key=lambda q: (q.imag, q.real))


_REFERENCE_MU = 1.0


def _reference_lowest():
    poles = poles_in_box(_REFERENCE_MU, (-4.0, 4.0, -2.0, 4.0), 50)
    if not poles:
        raise ConvergenceError("no poles located at the reference viscosity")
    return poles[0]


_ref_cache: dict = {}


def lowest_pole(mu: float, steps_per_unit_log: int = 40) -> complex:
    """Pole of Phi0 with the smallest imaginary part.

    Found at mu = 1 from a grid search, then continued in mu with Newton at
    each step (log-spaced viscosities).
    """
    _check_mu(mu)
    if "ref" not in _ref_cache:
        _ref_cache["ref"] = _reference_lowest()
    xi = _ref_cache["ref"]
    span = math.log(mu / _REFERENCE_MU)
    nsteps = max(1, int(math.ceil(abs(span) * steps_per_unit_log)))
    for k in range(1, nsteps + 1):
        m = _REFERENCE_MU * math.exp(span * k / nsteps)
        xi = find_pole(xi, m, max_step=0.1)
    return xi


def lowest_pole_path(mus):
    """Lowest pole for a monotone sequence of viscosities, continued along it."""
    mus = list(mus)
    out = [lowest_pole(mus[0])]
    for m in mus[1:]:
        out.append(find_pole(out[-1], m, max_step=0.1))
    return out


def critical_mu(lo: float = 0.1, hi: float = 0.2, tol: float = 1e-4) -> float:
    """Viscosity at which the lowest pole crosses the real xi axis."""
    xi_lo, xi_hi = lowest_pole(lo), lowest_pole(hi)
    if not (xi_lo.imag < 0 < xi_hi.imag):
        raise ConvergenceError("the lowest pole does not change half plane on the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        # continue from the nearer bracket end
        seed = xi_lo if mid - lo < hi - mid else xi_hi
        src = lo if seed is xi_lo else hi
        xi = seed
        for m in np.linspace(src, mid, 5)[1:]:
            xi = find_pole(xi, float(m), max_step=0.05)
        if xi.imag < 0:
            lo, xi_lo = mid, xi
        else:
            hi, xi_hi = mid, xi
    # linear interpolation of Im xi inside the final bracket
    return lo + (hi - lo) * (-xi_lo.imag) / (xi_hi.imag - xi_lo.imag)


# ---------------------------------------------------------- counting and flags

def count_poles(mu: float, box, n_side: int = 400) -> int:
    """Number of zeros of the Phi0 denominator inside ``box`` (argument principle)."""
    x0, x1, y0, y1 = box
    a, k = _pcf_args(mu)
    t = np.linspace(0, 1, n_side, endpoint=False)
    path = np.concatenate([
        x0 + (x1 - x0) * t + 1j * y0,
        x1 + 1j * (y0 + (y1 - y0) * t),
        x1 - (x1 - x0) * t + 1j * y1,
        x0 + 1j * (y1 - (y1 - y0) * t),
    ])
    vals = np.array([pcf_u(a - 1, 1j * q * k).value for q in path])
    dphi = np.angle(np.roll(vals, -1) / vals)
    return int(round(np.sum(dphi) / (2 * np.pi)))


def stokes_flags(z: complex) -> StokesRegion:
    """Whether z lies in the wedge pi/4 < arg(z - i) < 3 pi/4."""
    d = complex(z) - 1j
    if d == 0:
        raise InvalidInput("z = i is the centre of the inner region")
    th = cmath.phase(d)
    if math.pi / 4 < th < 3 * math.pi / 4:
        return StokesRegion.BETWEEN_WEDGE
    return StokesRegion.BELOW_ANTI_STOKES


def outer_from_inner(xi: complex, t: float) -> complex:
    """z = i + t^(1/2) xi."""
    return 1j + math.sqrt(t) * complex(xi)
