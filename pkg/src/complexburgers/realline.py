"""Real-line solutions: a Chebyshev method of lines plus slope diagnostics.

The PDE u_t + u u_x = mu u_xx is posed on [-L, L] with u_x(+-L) = 0 and
discretised by collocation at the Chebyshev-Lobatto points.  The two boundary
values are eliminated through the Neumann rows of the differentiation matrix,
leaving an ODE system for the interior values which is handed to a stiff
integrator together with its exact Jacobian.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar

from . import colehopf
from .core import PhysParams
from .errors import InvalidInput, NoInteriorMax, StepFailure

#: number of output points on [-5, 5]
N_OUT = 250
OUTPUT_HALF_WIDTH = 5.0


def output_nodes(n: int = N_OUT, half_width: float = OUTPUT_HALF_WIDTH) -> np.ndarray:
    """x_i = 5 cos((2i - 1) pi / (2n)), i = 1..n (decreasing)."""
    i = np.arange(1, n + 1)
    return half_width * np.cos((2 * i - 1) * np.pi / (2 * n))


@dataclass(frozen=True)
class SolveConfig:
    L: float = 15.0
    N_solve: int = 512
    T: float = 2.0
    M: int = 501
    atol: float = 1e-13
    rtol: float = 1e-11

    def __post_init__(self):
        if self.L < 10:
            raise InvalidInput("L must be at least 10")
        if self.M < 2:
            raise InvalidInput("need at least two snapshots")
        if self.N_solve < 8:
            raise InvalidInput("N_solve too small")
        if not self.T > 0:
            raise InvalidInput("T must be positive")

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.M)


@dataclass(frozen=True)
class FieldSnapshot:
    """The solution at one time.

    ``nodes``/``values`` are the output points on [-5, 5]; ``grid`` and
    ``grid_values`` keep the full collocation solution on [-L, L], which the
    slope and enstrophy diagnostics use.
    """

    t: float
    nodes: np.ndarray
    values: np.ndarray
    grid: np.ndarray = field(repr=False, default=None)
    grid_values: np.ndarray = field(repr=False, default=None)
    L: float = 15.0


# ------------------------------------------------------------ Chebyshev tools

@lru_cache(maxsize=8)
def _cheb(n: int, L: float):
    """Lobatto points x_j = L cos(j pi/n) and first-derivative matrix."""
    j = np.arange(n + 1)
    x = np.cos(np.pi * j / n)
    c = np.ones(n + 1)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** j
    X = np.tile(x, (n + 1, 1)).T
    dX = X - X.T
    D = np.outer(c, 1.0 / c) / (dX + np.eye(n + 1))
    D -= np.diag(D.sum(axis=1))
    return L * x, D / L


@lru_cache(maxsize=8)
def _clenshaw_curtis(n: int, L: float) -> np.ndarray:
    """Quadrature weights on the Lobatto points, scaled to [-L, L]."""
    theta = np.pi * np.arange(n + 1) / n
    w = np.zeros(n + 1)
    v = np.ones(n - 1)
    if n % 2 == 0:
        w[0] = w[n] = 1.0 / (n * n - 1)
        for k in range(1, n // 2):
            v -= 2 * np.cos(2 * k * theta[1:-1]) / (4 * k * k - 1)
        v -= np.cos(n * theta[1:-1]) / (n * n - 1)
    else:
        w[0] = w[n] = 1.0 / (n * n)
        for k in range(1, (n - 1) // 2 + 1):
            v -= 2 * np.cos(2 * k * theta[1:-1]) / (4 * k * k - 1)
    w[1:-1] = 2 * v / n
    return w * L


def _bary_weights(n: int) -> np.ndarray:
    w = (-1.0) ** np.arange(n + 1)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def bary_interp(xg: np.ndarray, fg: np.ndarray, x) -> np.ndarray:
    """Barycentric interpolation from the Lobatto grid ``xg``."""
    w = _bary_weights(len(xg) - 1)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    diff = x[:, None] - xg[None, :]
    exact = diff == 0
    diff[exact] = 1.0
    k = w / diff
    out = (k @ fg) / k.sum(axis=1)
    rows, cols = np.nonzero(exact)
    out[rows] = fg[cols]
    return out


def _neumann_map(D: np.ndarray) -> np.ndarray:
    """Matrix P with u_full = P u_interior when u_x = 0 at both ends."""
    n = D.shape[0] - 1
    A = D[np.ix_([0, n], [0, n])]
    C = D[[0, n], 1:n]
    B = -np.linalg.solve(A, C)
    P = np.zeros((n + 1, n - 1))
    P[0] = B[0]
    P[n] = B[1]
    P[1:n] = np.eye(n - 1)
    return P


def initial_condition(x):
    return 1.0 / (1.0 + np.asarray(x) ** 2)


# ------------------------------------------------------------------ solver

def solve_real(mu: float, cfg: SolveConfig = SolveConfig(), times=None) -> list[FieldSnapshot]:
    """Snapshots of the real-line solution at ``times`` (default: cfg.times())."""
    if not mu > 0:
        raise InvalidInput("mu must be positive")
    n = cfg.N_solve
    x, D = _cheb(n, cfg.L)
    P = _neumann_map(D)
    DP = (D @ P)[1:n]
    D2P = (D @ D @ P)[1:n]
    A = mu * D2P

    def rhs(_t, ui):
        return A @ ui - ui * (DP @ ui)

    def jac(_t, ui):
        J = A - ui[:, None] * DP
        J[np.diag_indices_from(J)] -= DP @ ui
        return J

    ts = cfg.times() if times is None else np.asarray(times, dtype=float)
    sol = solve_ivp(rhs, (0.0, float(ts[-1])), initial_condition(x[1:n]), method="Radau",
                    t_eval=ts, jac=jac, rtol=cfg.rtol, atol=cfg.atol)
    if not sol.success:
        raise StepFailure(f"time stepping failed: {sol.message}")
    out_x = output_nodes()
    snaps = []
    for k, t in enumerate(sol.t):
        full = P @ sol.y[:, k]
        snaps.append(FieldSnapshot(float(t), out_x, bary_interp(x, full, out_x), x, full, cfg.L))
    return snaps


def _grid(snap: FieldSnapshot):
    if snap.grid is None:
        raise InvalidInput("snapshot carries no collocation grid")
    n = len(snap.grid) - 1
    x, D = _cheb(n, snap.L)
    return x, D


def mass(snap: FieldSnapshot) -> float:
    """Clenshaw-Curtis integral of u over [-L, L]."""
    x, _ = _grid(snap)
    return float(_clenshaw_curtis(len(x) - 1, snap.L) @ snap.grid_values)


def enstrophy(snap: FieldSnapshot) -> float:
    """E = (1/2) int (u_x)^2 dx over [-L, L]."""
    x, D = _grid(snap)
    ux = D @ snap.grid_values
    return float(0.5 * _clenshaw_curtis(len(x) - 1, snap.L) @ (ux * ux))


def max_abs_slope(snap: FieldSnapshot):
    """(x*, max |u_x|) from the spectral derivative, refined by golden section."""
    x, D = _grid(snap)
    ux = D @ snap.grid_values
    k = int(np.argmax(np.abs(ux)))
    if k == 0 or k == len(x) - 1:
        return float(x[k]), float(abs(ux[k]))
    lo, hi = sorted((x[k - 1], x[k + 1]))

    def neg(xx):
        return -abs(bary_interp(x, ux, xx)[0])

    r = minimize_scalar(neg, bracket=(lo, x[k], hi), method="golden", tol=1e-10)
    return float(r.x), float(-r.fun)


def write_snapshots_csv(path, snaps) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "x", "u"])
        for s in snaps:
            for xx, uu in zip(s.nodes, s.values):
                w.writerow([format(s.t, ".17g"), format(float(xx), ".17g"), format(float(uu), ".17g")])


# --------------------------------------------------- exact real-line slopes

def exact_max_slope(mu: float, t: float, x_range=(-2.0, 6.0), n: int = 401):
    """(x*, max |u_x|) at time t from the Cole-Hopf integrals.

    Used where the collocation grid cannot resolve the viscous front
    (small mu and t beyond the inviscid shock time).
    """
    if t == 0:
        x0 = 1 / math.sqrt(3.0)
        return x0, 3 * math.sqrt(3.0) / 8
    p = PhysParams(mu, t)
    xs = np.linspace(*x_range, n)

    def slope(xx):
        return abs(colehopf.evaluate_u_and_slope(float(xx), p)[1].real)

    vals = np.array([slope(xx) for xx in xs])
    k = int(np.argmax(vals))
    k = min(max(k, 1), n - 2)
    r = minimize_scalar(lambda xx: -slope(xx), bracket=(xs[k - 1], xs[k], xs[k + 1]),
                        method="golden", tol=1e-10)
    return float(r.x), float(-r.fun)


def _peak_time(ts, vs):
    k = int(np.argmax(vs))
    if k == 0 or k == len(ts) - 1:
        raise NoInteriorMax("maximum slope attained at an end of the time window")
    c2, c1, _ = np.polyfit(ts[k - 1:k + 2] - ts[k], vs[k - 1:k + 2], 2)
    return float(ts[k] - c1 / (2 * c2))


def slope_turning_time(mu: float, T: float = 5.0, dt: float = 0.05, source: str = "colehopf") -> float:
    """Time at which max |u_x| stops growing and starts to decay.

    ``source="colehopf"`` samples the exact solution (accurate for all
    mu >= 0.01); ``source="collocation"`` uses ``solve_real`` snapshots and
    is only resolved for moderate mu.
    """
    if not 0.01 <= mu <= 1:
        raise InvalidInput("mu must lie in [0.01, 1]")
    ts = np.arange(0.0, T + dt / 2, dt)
    if source == "colehopf":
        vs = np.array([exact_max_slope(mu, t)[1] for t in ts])
        t0 = _peak_time(ts, vs)
        # resample finely around the coarse peak
        fine = np.linspace(max(t0 - 2 * dt, dt), t0 + 2 * dt, 9)
        fv = np.array([exact_max_slope(mu, t)[1] for t in fine])
        return _peak_time(fine, fv)
    if source == "collocation":
        snaps = solve_real(mu, SolveConfig(T=T, M=len(ts)))
        vs = np.array([max_abs_slope(s)[1] for s in snaps])
        return _peak_time(np.array([s.t for s in snaps]), vs)
    raise InvalidInput(f"unknown source {source!r}")


def initial_slope_trend(mu: float, t_probe: float = 0.05, samples: int = 6) -> float:
    """d/dt max|u_x| at t = 0+, from a collocation solve on [0, t_probe].

    max|u_x| is sampled at ``samples`` equally spaced times in (0, t_probe]
    plus t = 0, and a quadratic fit gives the initial rate.  Using the chord
    over the whole window instead would bias the sign change towards smaller
    mu because the slope curve bends within the window.
    """
    ts = np.linspace(0.0, t_probe, samples + 1)
    snaps = solve_real(mu, SolveConfig(T=t_probe, M=len(ts)), times=ts)
    vs = np.array([max_abs_slope(s)[1] for s in snaps])
    return float(np.polyfit(ts, vs, 2)[1])


def critical_mu_tilde(lo: float = 0.1, hi: float = 0.2, tol: float = 1e-4, t_probe: float = 0.05) -> float:
    """Bisect on mu for the sign change of the initial slope trend."""
    flo, fhi = initial_slope_trend(lo, t_probe), initial_slope_trend(hi, t_probe)
    if not (flo > 0 > fhi):
        raise InvalidInput("slope trend does not change sign on the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if initial_slope_trend(mid, t_probe) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


__all__ = ["SolveConfig", "FieldSnapshot", "solve_real", "max_abs_slope", "enstrophy", "mass",
           "slope_turning_time", "critical_mu_tilde", "exact_max_slope", "output_nodes",
           "initial_slope_trend", "write_snapshots_csv", "bary_interp"]
