"""Small-time singularities for the initial data u0 = 1/(1 + x^2)^beta.

Near x = i the data behave like A/(x - i)^beta with A = (-i/2)^beta, and the
first correction is

    u1 ~ mu beta (beta+1) A/(x-i)^(beta+2) + beta A^2/(x-i)^(2 beta+1).

The diffusive term wins for beta < 1 and the advective one for beta > 1, which
gives two quite different routes to the simple poles of the viscous solution:

* beta < 1: a linear inner problem solved by a parabolic cylinder function,
  then a logarithmic rescaling in which poles sit at the poles of
  F0 = i/(1 - e^{iX}/(i^beta K));
* beta > 1: an implicit first-order inner solution with square-root branch
  points xi0, each of which is resolved by an Airy-function inner layer.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import BranchAmbiguity, InvalidInput, ValidityRange
from .specfun import airy_ai_zeros, gamma_c, pcf_u


class Regime(str, enum.Enum):
    DIFFUSION_DOMINATED = "DiffusionDominated"
    BORDERLINE = "Borderline"
    ADVECTION_DOMINATED = "AdvectionDominated"


@dataclass(frozen=True)
class BetaRegime:
    beta: float
    regime: Regime

    @classmethod
    def classify(cls, beta: float) -> "BetaRegime":
        if not beta > 0:
            raise InvalidInput("beta must be positive")
        if beta < 1:
            return cls(beta, Regime.DIFFUSION_DOMINATED)
        if beta == 1:
            return cls(beta, Regime.BORDERLINE)
        return cls(beta, Regime.ADVECTION_DOMINATED)


def amplitude(beta: float) -> complex:
    """A = (-i/2)^beta on the principal branch."""
    return cmath.exp(beta * cmath.log(-0.5j))


def u1_leading_terms(beta: float, mu: float):
    """[(coefficient, order)] of the two singular terms of u1 at x = i."""
    A = amplitude(beta)
    return [(mu * beta * (beta + 1) * A, beta + 2), (beta * A * A, 2 * beta + 1)]


def dominant_order(beta: float) -> float:
    """Order of the stronger singularity in u1: beta+2 (beta<1) or 2beta+1 (beta>1)."""
    return max(beta + 2, 2 * beta + 1)


# ------------------------------------------------------------- beta < 1

def _check_lt1(beta):
    if not 0 < beta < 1:
        raise InvalidInput("this route needs 0 < beta < 1")


def beta_lt1_inner(xi: complex, mu: float, beta: float) -> complex:
    """Entire leading-order inner solution for beta < 1.

    Phi0 = A (-2 mu)^(-beta/2) exp(-xi^2/(8 mu)) U(beta - 1/2, i xi/sqrt(2 mu)).
    The power (-2 mu)^(beta/2) is taken with arg(-2 mu) = -pi, which is the
    branch that reproduces Phi0 ~ A/xi^beta as xi -> -i infinity.
    """
    _check_lt1(beta)
    xi = complex(xi)
    A = amplitude(beta)
    pref = A * (2 * mu) ** (-beta / 2) * cmath.exp(1j * math.pi * beta / 2)
    w = 1j * xi / math.sqrt(2 * mu)
    return pref * cmath.exp(-xi * xi / (8 * mu)) * pcf_u(beta - 0.5, w).value


def k_constant(beta: float, mu: float) -> complex:
    """K = i A sqrt(2 pi) (2 mu)^(1/2 - beta) / Gamma(beta)."""
    _check_lt1(beta)
    return 1j * amplitude(beta) * math.sqrt(2 * math.pi) * (2 * mu) ** (0.5 - beta) / gamma_c(beta).value


def f0(X: complex, beta: float, mu: float) -> complex:
    """F0 = i / (1 - e^{iX}/(i^beta K))."""
    ib = cmath.exp(1j * math.pi * beta / 2)
    return 1j / (1 - cmath.exp(1j * X) / (ib * k_constant(beta, mu)))


def f0_poles(beta: float, mu: float, n_range) -> list[complex]:
    """X_n = -i log(i^beta K) + 2 pi n."""
    ib = cmath.exp(1j * math.pi * beta / 2)
    X0 = -1j * cmath.log(ib * k_constant(beta, mu))
    return [X0 + 2 * math.pi * n for n in n_range]


def beta_lt1_poles(t: float, mu: float, beta: float, n_range) -> list[complex]:
    """s_n(t) = i + t^(1/2) xi_n with xi_n from the logarithmic rescaling."""
    _check_lt1(beta)
    if not 0 < t < 0.1:
        raise ValidityRange("the pole law is a small-time result (0 < t < 0.1)")
    L = math.log(1 / t)
    ns = list(n_range)
    if any(abs(n) > L / 4 for n in ns):
        raise ValidityRange(f"|n| must not exceed ln(1/t)/4 = {L / 4:.3g}")
    c1 = 1j * math.sqrt(2 * mu * (1 - beta) * L)
    c2 = 1j * (2 - beta) * math.sqrt(mu) / math.sqrt(2 * (1 - beta)) \
        * (math.log(L) + math.log(2 * mu * (1 - beta))) / math.sqrt(L)
    c3 = math.sqrt(2 * mu / (1 - beta)) / math.sqrt(L)
    rt = math.sqrt(t)
    return [1j + rt * (c1 + c2 + c3 * X) for X in f0_poles(beta, mu, ns)]


def beta_half_poles(t: float, mu: float, n_range) -> list[complex]:
    """The beta = 1/2 pole law written out term by term."""
    if not 0 < t < 0.1:
        raise ValidityRange("the pole law is a small-time result (0 < t < 0.1)")
    L = math.log(1 / t)
    ns = list(n_range)
    if any(abs(n) > L / 4 for n in ns):
        raise ValidityRange(f"|n| must not exceed ln(1/t)/4 = {L / 4:.3g}")
    rm, rt = math.sqrt(mu), math.sqrt(t)
    base = 1j + 1j * rm * rt * math.sqrt(L) + 1.5j * rm * rt * (math.log(L) + math.log(mu)) / math.sqrt(L)
    return [base + rm * math.pi * (1 + 4 * n) * rt / math.sqrt(L) for n in ns]


# ------------------------------------------------------------- beta > 1

def advective_branch_points(beta: float) -> list[complex]:
    """xi0 = (1+beta) (A/beta^beta)^(1/(beta+1)) over the distinct root choices."""
    if not beta > 1:
        raise InvalidInput("branch points of the implicit solution need beta > 1")
    c = amplitude(beta) / beta**beta
    m = math.ceil(beta + 1 - 1e-12)
    r = abs(c) ** (1 / (beta + 1))
    return [(1 + beta) * r * cmath.exp(1j * (cmath.phase(c) + 2 * math.pi * k) / (beta + 1))
            for k in range(m)]


def beta2_branch_points() -> list[complex]:
    """-3/16^(1/3) and 3 e^{+-i pi/3}/16^(1/3), ordered by argument."""
    pts = advective_branch_points(2.0)
    return sorted(pts, key=lambda z: cmath.phase(z))


def implicit_residual(phi: complex, xi: complex, beta: float) -> complex:
    """Phi0 (xi - Phi0)^beta - A."""
    return phi * (xi - phi) ** beta - amplitude(beta)


def lambda_const(xi0: complex, mu: float, beta: float) -> complex:
    """lambda = -(beta xi0)^(1/2) / (sqrt(2) mu (beta+1)), principal square root."""
    return -cmath.sqrt(beta * xi0) / (math.sqrt(2) * mu * (beta + 1))


def lambda_two_thirds(xi0: complex, mu: float, beta: float) -> complex:
    """Cube root of lambda^2 selected so that the Airy poles point inwards.

    Real Airy zeros a_k < 0 put the poles on the ray X = |a_k| (-1/w), where
    w is the chosen cube root of lambda^2.  The far field of Phi0, where it
    matches the outer solution, is |xi| -> infinity, so we take the root whose
    ray from xi0 points most directly back towards xi = 0.
    """
    lam2 = lambda_const(xi0, mu, beta) ** 2
    base = cmath.exp(cmath.log(lam2) / 3)
    roots = [base * cmath.exp(2j * math.pi * k / 3) for k in range(3)]
    inward = -xi0 / abs(xi0)

    def align(w):
        d = -1 / w
        return (d / abs(d) * inward.conjugate()).real

    scores = sorted(((align(w), k) for k, w in enumerate(roots)), reverse=True)
    if scores[0][0] - scores[1][0] < 1e-9:
        raise BranchAmbiguity(f"two cube roots of lambda^2 are equally admissible at xi0={xi0}")
    return roots[scores[0][1]]


def beta2_poles(t: float, mu: float, k_range, beta: float = 2.0) -> list[list[complex]]:
    """Per branch point, s ~ i + t^(1/(beta+1)) xi0 + t^((5 beta - 1)/(3 (beta+1))) X0.

    The X-scale exponent is 1/(beta+1) + 2(beta-1)/(3(beta+1)), which is 5/9
    at beta = 2.  X0 runs over the Airy zeros rescaled by lambda^(-2/3).
    """
    if not 0 < t <= 0.05:
        raise ValidityRange("the pole law is a small-time result (0 < t <= 0.05)")
    ks = list(k_range)
    if not ks or max(ks) > 20 or min(ks) < 1:
        raise InvalidInput("k must run over 1..20")
    zeros = airy_ai_zeros(max(ks))
    e1 = 1 / (beta + 1)
    e2 = e1 + 2 * (beta - 1) / (3 * (beta + 1))
    out = []
    for xi0 in advective_branch_points(beta):
        w = lambda_two_thirds(xi0, mu, beta)
        out.append([1j + t**e1 * xi0 + t**e2 * zeros[k - 1] / w for k in ks])
    return out


__all__ = ["Regime", "BetaRegime", "amplitude", "u1_leading_terms", "dominant_order",
           "beta_lt1_inner", "k_constant", "f0", "f0_poles", "beta_lt1_poles", "beta_half_poles",
           "advective_branch_points", "beta2_branch_points", "implicit_residual",
           "lambda_const", "lambda_two_thirds", "beta2_poles"]
