"""Tracking the pole nearest the real axis.

Two models of the Cole-Hopf denominator are supported:

* ``ExactRoot``: the quadrature value of D from :mod:`colehopf`;
* ``Saddle``: the small-mu steepest-descent sum over two saddle points of
  h(s) = -arctan(s)/2 - (z - s)^2/(4t).

Trajectories are followed by damped Newton in t-steps, each step seeded by a
linear extrapolation of the last two converged positions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import colehopf
from .core import Method, PhysParams, PoleTrajectory, TrajectorySample
from .errors import (BurgersError, ConvergenceError, DegenerateSaddle, InvalidInput,
                     SeedRejected)

NEWTON_MAXIT = 40
NEWTON_TOL = 1e-11
MAX_HALVINGS = 8
FD_STEP = 1e-7
MAX_CONSECUTIVE_FAILURES = 3


# ----------------------------------------------------------------- saddles

def h_value(s: complex, z: complex, t: float) -> complex:
    return -0.5 * cmath.atan(s) - (z - s) ** 2 / (4 * t)


def h_second(s: complex, t: float) -> complex:
    return s / (1 + s * s) ** 2 - 1 / (2 * t)


def cubic_roots(b: complex, c: complex, d: complex):
    """All roots of s^3 + b s^2 + c s + d by Cardano, then Newton-polished."""
    p = c - b * b / 3
    q = 2 * b**3 / 27 - b * c / 3 + d
    disc = cmath.sqrt(q * q / 4 + p**3 / 27)
    w1, w2 = -q / 2 + disc, -q / 2 - disc
    w = w1 if abs(w1) >= abs(w2) else w2
    roots = []
    if w == 0:
        roots = [-b / 3] * 3
    else:
        u = w ** (1 / 3)
        for k in range(3):
            uk = u * cmath.exp(2j * math.pi * k / 3)
            roots.append(uk - p / (3 * uk) - b / 3)
    out = []
    for r in roots:
        for _ in range(3):
            f = ((r + b) * r + c) * r + d
            df = (3 * r + 2 * b) * r + c
            if df == 0:
                break
            r -= f / df
        out.append(r)
    return out


@dataclass(frozen=True)
class SaddleSet:
    """Saddles of h, their h-values, the dominant pair and descent angles."""

    roots: tuple
    h_values: tuple
    selected_pair: tuple
    angles: tuple
    h2: tuple = field(default=())

    def residuals(self, z, t):
        return [abs(s**3 - z * s**2 + s + t - z) for s in self.roots]


def _descent_angle(h2: complex) -> float:
    a = cmath.phase(h2)
    for d in ((math.pi - a) / 2, (3 * math.pi - a) / 2):
        if math.cos(d) > 0:
            return d
    # cos(delta) == 0 exactly: take the first (measure-zero case)
    return (math.pi - a) / 2


def saddle_points(z: complex, t: float) -> SaddleSet:
    """Roots of s^3 - z s^2 + s + t - z = 0 with dominant-pair selection."""
    z = complex(z)
    if not t > 0:
        raise InvalidInput("t must be positive")
    roots = cubic_roots(-z, 1.0 + 0j, t - z)
    hs = [h_value(s, z, t) for s in roots]
    h2 = [h_second(s, t) for s in roots]
    pairs = [(0, 1), (0, 2), (1, 2)]
    gaps = [abs(hs[i].real - hs[j].real) for i, j in pairs]
    gmin = min(gaps)
    cands = [pr for pr, g in zip(pairs, gaps) if g <= gmin + 1e-14]
    if len(cands) > 1:
        top = max(range(3), key=lambda k: hs[k].real)
        cands = [pr for pr in cands if top in pr] or cands
    i, j = cands[0]
    for k in (i, j):
        if abs(h2[k]) < 1e-12:
            raise DegenerateSaddle(f"h'' vanishes at saddle {roots[k]}")
    return SaddleSet(tuple(roots), tuple(hs), (i, j),
                     (_descent_angle(h2[i]), _descent_angle(h2[j])), tuple(h2))


def saddle_log_denominator(z: complex, t: float, mu: float):
    """Two-saddle approximation to D as (mantissa, log scale)."""
    ss = saddle_points(z, t)
    i, j = ss.selected_pair
    L = max(ss.h_values[i].real, ss.h_values[j].real) / mu
    total = 0j
    for k, d in zip((i, j), ss.angles):
        total += math.sqrt(2 * mu * math.pi / abs(ss.h2[k])) * cmath.exp(1j * d + ss.h_values[k] / mu - L)
    return total, L


def saddle_denominator(z: complex, t: float, mu: float) -> complex:
    """D ~ sqrt(2 mu pi) sum |h''(s_j)|^(-1/2) exp(i delta_j + h(s_j)/mu)."""
    m, L = saddle_log_denominator(z, t, mu)
    return m * math.exp(L)


# ----------------------------------------------------------------- Newton

def _log_abs(m, L):
    return -math.inf if m == 0 else math.log(abs(m)) + L


class _ExactModel:
    def __init__(self, mu, opts):
        self.mu = mu
        self.opts = opts

    def log_abs(self, z, t):
        m, L = colehopf.log_denominator(z, PhysParams(self.mu, t), self.opts)
        return _log_abs(m, L)

    def step(self, z, t):
        return colehopf.newton_step(z, PhysParams(self.mu, t), self.opts)


class _SaddleModel:
    def __init__(self, mu):
        self.mu = mu

    def log_abs(self, z, t):
        return _log_abs(*saddle_log_denominator(z, t, self.mu))

    def step(self, z, t):
        m0, L0 = saddle_log_denominator(z, t, self.mu)
        mp, Lp = saddle_log_denominator(z + FD_STEP, t, self.mu)
        mm, Lm = saddle_log_denominator(z - FD_STEP, t, self.mu)
        # put all three on the scale of the centre value
        dp = (mp * math.exp(Lp - L0) - mm * math.exp(Lm - L0)) / (2 * FD_STEP)
        if dp == 0:
            raise ConvergenceError("zero derivative in saddle Newton")
        return -m0 / dp


def _model(method: Method, mu: float, opts):
    method = Method(method)
    if method is Method.EXACT_ROOT:
        return _ExactModel(mu, opts)
    if method is Method.SADDLE:
        return _SaddleModel(mu)
    raise InvalidInput(f"track_pole does not support {method}")


def _newton(model, z, t, max_step):
    """Damped Newton with step halving on |D|; returns (z, converged)."""
    try:
        f0 = model.log_abs(z, t)
    except BurgersError:
        return z, False
    for _ in range(NEWTON_MAXIT):
        try:
            step = model.step(z, t)
        except BurgersError:
            return z, False
        if abs(step) > max_step:
            step *= max_step / abs(step)
        lam = 1.0
        accepted = False
        for _ in range(MAX_HALVINGS + 1):
            cand = z + lam * step
            try:
                f1 = model.log_abs(cand, t)
            except BurgersError:
                f1 = math.inf
            if f1 < f0 or abs(lam * step) <= NEWTON_TOL * max(1.0, abs(z)):
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            return z, False
        z, f0 = cand, f1
        if abs(lam * step) <= NEWTON_TOL * max(1.0, abs(z)):
            return z, True
    return z, False


def refine_pole(z: complex, mu: float, t: float, method: Method = Method.EXACT_ROOT,
                opts=colehopf.DEFAULT_OPTIONS, max_step: float = 0.05) -> complex:
    """Newton-refine one pole of u at fixed (mu, t)."""
    zz, ok = _newton(_model(method, mu, opts), complex(z), t, max_step)
    if not ok:
        raise ConvergenceError(f"pole refinement from {z} failed (mu={mu}, t={t})")
    return zz


def track_pole(method: Method | str, mu: float, t_start: float, t_end: float, dt: float,
               seed: complex, residues: bool = False, opts=colehopf.DEFAULT_OPTIONS,
               max_step: float = 0.05) -> PoleTrajectory:
    """Follow one pole from ``t_start`` to ``t_end`` in steps of ``dt``."""
    method = Method(method)
    if not dt > 0:
        raise InvalidInput("dt must be positive")
    if not (t_start > 0 and t_end > 0):
        raise InvalidInput("times must be positive")
    model = _model(method, mu, opts)
    nsteps = int(round(abs(t_end - t_start) / dt))
    direction = 1.0 if t_end >= t_start else -1.0
    times = [t_start + direction * k * dt for k in range(nsteps + 1)]
    z, ok = _newton(model, complex(seed), times[0], max_step)
    if not ok:
        raise SeedRejected(f"Newton from seed {seed} failed at t={t_start}")
    samples = [TrajectorySample(times[0], z, _residue(method, z, mu, times[0], residues, opts), True)]
    good = [(times[0], z)]
    fails = 0
    note = ""
    for t in times[1:]:
        if len(good) >= 2:
            (ta, za), (tb, zb) = good[-2], good[-1]
            guess = zb + (zb - za) * (t - tb) / (tb - ta)
        else:
            guess = good[-1][1]
        z, ok = _newton(model, guess, t, max_step)
        if ok and len(good) >= 1 and abs(z - good[-1][1]) > 10 * max(abs(guess - good[-1][1]), dt):
            # jumped to a different pole
            ok = False
        if ok:
            fails = 0
            good.append((t, z))
            samples.append(TrajectorySample(t, z, _residue(method, z, mu, t, residues, opts), True))
        else:
            fails += 1
            samples.append(TrajectorySample(t, complex(math.nan, math.nan), complex(math.nan, math.nan), False))
            if fails >= MAX_CONSECUTIVE_FAILURES:
                note = f"stopped after {fails} consecutive failures at t={t:.6g}"
                break
    return PoleTrajectory(method, samples, note)


def _residue(method, z, mu, t, want, opts):
    if not want or method is not Method.EXACT_ROOT:
        return complex(math.nan, math.nan)
    return colehopf.residue_probe(z, PhysParams(mu, t), opts=opts)


# ------------------------------------------------------------ closest pole

def closest_pole(mu: float, t: float, box=(-1.0, 6.0, 0.02, 1.5), n: tuple = (71, 38),
                 opts=colehopf.DEFAULT_OPTIONS, candidates: int = 6) -> complex:
    """Upper-half-plane pole with the smallest imaginary part inside ``box``.

    Seeds are local maxima of |u| on an n[0]-by-n[1] grid (|u| is a better
    pole detector than |D|, whose exponential background swamps the zeros).
    The lowest few seeds are refined by Newton and the lowest root kept.
    """
    x0, x1, y0, y1 = box
    xs = np.linspace(x0, x1, n[0])
    ys = np.linspace(y0, y1, n[1])
    p = PhysParams(mu, t)
    pts = [complex(x, y) for y in ys for x in xs]
    vals = np.abs(colehopf.u_grid(pts, p, opts)).reshape(len(ys), len(xs))
    vals = np.nan_to_num(vals, nan=np.inf)
    seeds = []
    for i in range(len(ys)):
        for j in range(len(xs)):
            nb = vals[max(i - 1, 0):i + 2, max(j - 1, 0):j + 2]
            if vals[i, j] >= nb.max() and 0 < i < len(ys) - 1 and 0 < j < len(xs) - 1:
                seeds.append(complex(xs[j], ys[i]))
    seeds.sort(key=lambda z: z.imag)
    best = None
    for z0 in seeds[:candidates]:
        try:
            z = refine_pole(z0, mu, t, opts=opts, max_step=0.05)
        except BurgersError:
            continue
        if z.imag > 0 and (best is None or z.imag < best.imag):
            best = z
    if best is None:
        raise ConvergenceError(f"no pole found in {box} at mu={mu}, t={t}")
    return best


def distance_minimum(traj: PoleTrajectory):
    """(t, Im z) at the interior minimum of Im z along a trajectory.

    The discrete minimum is refined by a parabola through its neighbours.
    """
    g = traj.good()
    ts, ys = g.times, g.locations.imag
    if len(ts) < 3:
        raise ConvergenceError("not enough samples")
    k = int(np.argmin(ys))
    if k == 0 or k == len(ts) - 1:
        raise ConvergenceError("minimum of Im z sits at an end of the sampled interval")
    return _parabola_vertex(ts[k - 1:k + 2], ys[k - 1:k + 2])


def _parabola_vertex(ts, ys):
    c2, c1, c0 = np.polyfit(ts - ts[1], ys, 2)
    tv = -c1 / (2 * c2)
    return float(ts[1] + tv), float(c0 - c1 * c1 / (4 * c2))
