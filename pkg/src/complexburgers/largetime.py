"""Large-time similarity solution and the poles of its complex continuation.

For large t the solution approaches sqrt(mu/t) Psi(z / sqrt(mu t)) with

    Psi(eta) = 2 exp(-eta^2/4) / (sqrt(pi) (gamma - erf(eta/2))),

and gamma = coth(pi/(4 mu)) fixed by the conserved mass pi.  Poles of Psi are
the zeros of G(eta) = gamma - erf(eta/2); in the far field they lie just off
the rays arg(eta) = pi/4 and 3 pi/4.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InvalidInput, NearPole
from .inner import Quadrant
from .specfun import erf_c, erfcx_c

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class SimilarityParams:
    mu: float
    gamma: float
    mass: float

    @classmethod
    def from_mu(cls, mu: float) -> "SimilarityParams":
        if not mu > 0:
            raise InvalidInput("mu must be positive")
        g = 1.0 / math.tanh(math.pi / (4.0 * mu))
        # log((g+1)/(g-1)) = pi/(2 mu) exactly; evaluate the formula anyway
        m = 2.0 * mu * math.log((g + 1.0) / (g - 1.0)) if g > 1 else math.inf
        return cls(mu, g, m)


def gamma_of_mu(mu: float) -> float:
    return SimilarityParams.from_mu(mu).gamma


def G(eta: complex, sp: SimilarityParams) -> complex:
    """gamma - erf(eta/2)."""
    return sp.gamma - erf_c(eta / 2).value


def psi(eta: complex, sp: SimilarityParams) -> complex:
    """Similarity profile Psi(eta).

    Written through the scaled complementary error function so that the
    Gaussian factor cancels analytically instead of over/underflowing: on
    Re eta >= 0, Psi = 2 / (sqrt(pi) ((gamma-1) e^{w^2} + erfcx(w))) with
    w = eta/2, and the odd symmetry of erf handles Re eta < 0.
    """
    eta = complex(eta)
    if eta.real >= 0:
        w = eta / 2
        den = (sp.gamma - 1.0) * cmath.exp(w * w) + erfcx_c(w)
    else:
        w = -eta / 2
        den = (sp.gamma + 1.0) * cmath.exp(w * w) - erfcx_c(w)
    if abs(den) < 1e-14:
        raise NearPole(f"Psi denominator vanishes near eta={eta}")
    return 2.0 / (SQRT_PI * den)


def psi_derivative(eta: complex, sp: SimilarityParams) -> complex:
    """Psi' from the Riccati equation Psi^2 - eta Psi = 2 Psi'."""
    p = psi(eta, sp)
    return (p * p - eta * p) / 2.0


def u_largetime(z: complex, t: float, mu: float) -> complex:
    """sqrt(mu/t) Psi(z / sqrt(mu t))."""
    if not t > 0:
        raise InvalidInput("t must be positive")
    sp = SimilarityParams.from_mu(mu)
    s = math.sqrt(mu * t)
    return math.sqrt(mu / t) * psi(complex(z) / s, sp)


def _quadrant(q) -> Quadrant:
    return Quadrant(q) if not isinstance(q, Quadrant) else q


def _log_const(sp: SimilarityParams, quadrant: Quadrant) -> float:
    g = sp.gamma - 1.0 if quadrant is Quadrant.FIRST else sp.gamma + 1.0
    return math.log(0.5 * SQRT_PI * g)


def psi_pole_path(rho: float, quadrant, sp: SimilarityParams) -> float:
    """Asymptotic angle theta(rho) of the pole rows."""
    quadrant = _quadrant(quadrant)
    if rho < 3:
        raise InvalidInput("the path law needs rho >= 3")
    corr = 2.0 / rho**2 * (math.log(rho) + _log_const(sp, quadrant))
    return math.pi / 4 + corr if quadrant is Quadrant.FIRST else 3 * math.pi / 4 - corr


def psi_pole_seed(n: int, quadrant, sp: SimilarityParams) -> float:
    """Closed-form rho_n^2 approximations, (8n+3)pi or (8n-1)pi minus a log term."""
    quadrant = _quadrant(quadrant)
    if quadrant is Quadrant.FIRST:
        return (8 * n + 3) * math.pi - (math.log(2 * n) + 2 * math.log(math.pi * (sp.gamma - 1))) / (2 * n * math.pi)
    return (8 * n - 1) * math.pi - (math.log(2 * n) + 2 * math.log(math.pi * (sp.gamma + 1))) / (2 * n * math.pi)


def transcendental_residual(rho: float, quadrant, sp: SimilarityParams) -> float:
    """-(1/2) rho^2 tan(rho^2/4 + pi/4) - ln rho - ln(sqrt(pi) (gamma -+ 1)/2)."""
    quadrant = _quadrant(quadrant)
    return -0.5 * rho**2 * math.tan(rho**2 / 4 + math.pi / 4) - math.log(rho) - _log_const(sp, quadrant)


def _solve_modulus(n: int, quadrant: Quadrant, sp: SimilarityParams) -> float:
    # rho^2/4 + pi/4 = k pi + arctan(-2 (ln rho + c)/rho^2), with k = 2n+1
    # (first quadrant) or 2n (second); this fixes the tan branch.
    k = 2 * n + 1 if quadrant is Quadrant.FIRST else 2 * n
    c = _log_const(sp, quadrant)
    r2 = psi_pole_seed(n, quadrant, sp)
    if not r2 > 0:
        r2 = (4 * k - 1) * math.pi
    for _ in range(100):
        rho = math.sqrt(r2)
        a = -2.0 * (math.log(rho) + c) / r2
        f = r2 / 4 + math.pi / 4 - k * math.pi - math.atan(a)
        # d/d(r2) of a = -2 [1/(2 r2) * r2 - (ln rho + c)] / r2^2
        da = -(1.0 - 2.0 * (math.log(rho) + c)) / r2**2
        df = 0.25 - da / (1 + a * a)
        step = f / df
        r2 -= step
        if r2 <= 0:
            raise ConvergenceError(f"modulus iteration left the domain for n={n}")
        if abs(step) <= 1e-14 * r2:
            return math.sqrt(r2)
    raise ConvergenceError(f"no convergence for n={n}")


def psi_pole_moduli(sp: SimilarityParams, n_max: int, quadrant, n_min: int = 1) -> list[float]:
    """rho_n for n = n_min..n_max solving the quadrant's transcendental equation."""
    quadrant = _quadrant(quadrant)
    if n_max > 50:
        raise InvalidInput("n_max is capped at 50")
    return [_solve_modulus(n, quadrant, sp) for n in range(n_min, n_max + 1)]


def predicted_psi_poles(sp: SimilarityParams, n_max: int, quadrant, n_min: int = 1) -> list[complex]:
    """rho_n exp(i theta(rho_n)) for each index."""
    quadrant = _quadrant(quadrant)
    return [r * cmath.exp(1j * psi_pole_path(r, quadrant, sp))
            for r in psi_pole_moduli(sp, n_max, quadrant, n_min)]


def antistokes_radius(n: int, t: float, mu: float, quadrant) -> float:
    """r with r^2/(4 mu t) = (2n + 3/4) pi (first) or (2n - 1/4) pi (second)."""
    quadrant = _quadrant(quadrant)
    if n < 1:
        raise InvalidInput("n must be at least 1")
    off = 0.75 if quadrant is Quadrant.FIRST else -0.25
    return math.sqrt(4 * mu * t * math.pi * (2 * n + off))


def find_psi_pole(seed: complex, sp: SimilarityParams, tol: float = 1e-12, maxit: int = 60) -> complex:
    """Newton on G(eta) with G'(eta) = -exp(-eta^2/4)/sqrt(pi)."""
    eta = complex(seed)
    for _ in range(maxit):
        g = G(eta, sp)
        dg = -cmath.exp(-eta * eta / 4) / SQRT_PI
        if dg == 0:
            break
        step = g / dg
        if abs(step) > 0.5:
            step *= 0.5 / abs(step)
        eta -= step
        if abs(step) <= 1e-15 * max(1.0, abs(eta)) or abs(G(eta, sp)) <= tol:
            if abs(G(eta, sp)) <= tol * max(1.0, sp.gamma):
                return eta
    raise ConvergenceError(f"Newton on G failed from seed {seed}")


def psi_residue(eta: complex, sp: SimilarityParams, radius: float = 1e-3, n: int = 64) -> complex:
    """Contour-probe residue of Psi about ``eta``."""
    th = 2 * np.pi * np.arange(n) / n
    pts = eta + radius * np.exp(1j * th)
    vals = np.array([psi(q, sp) for q in pts])
    return complex(np.mean(vals * radius * np.exp(1j * th)))


__all__ = ["SimilarityParams", "gamma_of_mu", "G", "psi", "psi_derivative", "u_largetime",
           "psi_pole_path", "psi_pole_seed", "psi_pole_moduli", "predicted_psi_poles",
           "transcendental_residual", "antistokes_radius", "find_psi_pole", "psi_residue"]
