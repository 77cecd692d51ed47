"""Gauss rules and composite integration along piecewise-linear contours.

Nodes come from Newton's method on the three-term recurrence, started from
asymptotic guesses, followed by explicit symmetrisation of +/- pairs.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import IntegrandBlowup, InvalidInput, InvalidOrder

NEWTON_TOL = 1e-15
NEWTON_MAXIT = 100
MAX_LEGENDRE = 2048
MAX_HERMITE = 512


class RuleKind(str, enum.Enum):
    LEGENDRE = "Legendre"
    HERMITE = "Hermite"


@dataclass(frozen=True)
class QuadratureRule:
    kind: RuleKind
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.nodes)


@dataclass(frozen=True)
class Contour:
    """Piecewise-linear path through ``vertices``."""

    vertices: tuple

    def __init__(self, vertices: Sequence[complex]):
        vs = tuple(complex(v) for v in vertices)
        if len(vs) < 2:
            raise InvalidInput("a contour needs at least two vertices")
        if any(a == b for a, b in zip(vs, vs[1:])):
            raise InvalidInput("consecutive contour vertices must differ")
        object.__setattr__(self, "vertices", vs)

    def segments(self):
        return list(zip(self.vertices, self.vertices[1:]))


def _legendre_eval(x: np.ndarray, n: int):
    """Return (P_n(x), P_{n-1}(x)) by the Bonnet recurrence."""
    p0 = np.ones_like(x)
    p1 = x.copy()
    if n == 0:
        return p0, np.zeros_like(x)
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    return p1, p0


@functools.lru_cache(maxsize=64)
def gauss_legendre_rule(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [-1, 1]."""
    if int(n) != n or not 1 <= n <= MAX_LEGENDRE:
        raise InvalidOrder(f"Legendre order must be in [1, {MAX_LEGENDRE}], got {n}")
    n = int(n)
    m = (n + 1) // 2  # nodes in [0, 1), largest first
    k = np.arange(1, m + 1)
    theta = np.pi * (k - 0.25) / (n + 0.5)
    x = (1 - 1 / (8 * n**2) + 1 / (8 * n**3)) * np.cos(theta)
    for _ in range(NEWTON_MAXIT):
        p, pm1 = _legendre_eval(x, n)
        dp = n * (x * p - pm1) / (x**2 - 1)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < NEWTON_TOL:
            break
    p, pm1 = _legendre_eval(x, n)
    dp = n * (x * p - pm1) / (x**2 - 1)
    w = 2 / ((1 - x**2) * dp**2)
    if n % 2:
        x[-1] = 0.0
    nodes = np.concatenate([-x, x[::-1][n % 2:]])
    weights = np.concatenate([w, w[::-1][n % 2:]])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(RuleKind.LEGENDRE, nodes, weights)


def _hermite_functions(x: np.ndarray, n: int):
    """Orthonormal Hermite functions psi_n, psi_{n-1} (including exp(-x^2/2))."""
    p0 = np.full_like(x, math.pi ** -0.25) * np.exp(-x**2 / 2)
    if n == 0:
        return p0, np.zeros_like(x)
    p1 = math.sqrt(2.0) * x * p0
    for k in range(1, n):
        p0, p1 = p1, math.sqrt(2.0 / (k + 1)) * x * p1 - math.sqrt(k / (k + 1)) * p0
    return p1, p0


def _hermite_guess(n: int, k: np.ndarray) -> np.ndarray:
    # WKB phase condition (2n+1)/2 (th - sin(th)cos(th)) = (k - 1/4) pi for the
    # k-th zero counted from the right, x = sqrt(2n+1) cos(th).
    c = (2 * n + 1) / 2
    target = (k - 0.25) * np.pi / c
    th = np.cbrt(1.5 * target)
    for _ in range(50):
        f = th - 0.5 * np.sin(2 * th) - target
        th = th - f / (1 - np.cos(2 * th))
    return math.sqrt(2 * n + 1) * np.cos(th)


@functools.lru_cache(maxsize=32)
def gauss_hermite_rule(n: int) -> QuadratureRule:
    """n-point Gauss-Hermite rule for the weight exp(-x^2) on the real line."""
    if int(n) != n or not 1 <= n <= MAX_HERMITE:
        raise InvalidOrder(f"Hermite order must be in [1, {MAX_HERMITE}], got {n}")
    n = int(n)
    m = (n + 1) // 2
    x = _hermite_guess(n, np.arange(1, m + 1, dtype=float))
    for _ in range(NEWTON_MAXIT):
        psi, psim1 = _hermite_functions(x, n)
        dx = psi / (math.sqrt(2 * n) * psim1)
        x = x - dx
        if np.max(np.abs(dx) / np.maximum(1.0, np.abs(x))) < NEWTON_TOL:
            break
    _, psim1 = _hermite_functions(x, n)
    with np.errstate(under="ignore"):
        w = np.exp(-x**2) / (n * psim1**2)
    if n % 2:
        x[-1] = 0.0
    nodes = np.concatenate([-x, x[::-1][n % 2:]])
    weights = np.concatenate([w, w[::-1][n % 2:]])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(RuleKind.HERMITE, nodes, weights)


def contour_nodes(path: Contour, rule: QuadratureRule, panels: int):
    """Nodes and complex weights (including dz/dparam) of the composite rule."""
    if rule.kind is not RuleKind.LEGENDRE:
        raise InvalidInput("contour integration needs a Legendre rule")
    if panels < 1:
        raise InvalidInput("panels must be >= 1")
    zs, ws = [], []
    frac = np.arange(panels + 1) / panels
    for a, b in path.segments():
        edges = a + (b - a) * frac
        half = (edges[1:] - edges[:-1]) / 2
        mid = (edges[1:] + edges[:-1]) / 2
        zs.append((mid[:, None] + half[:, None] * rule.nodes[None, :]).ravel())
        ws.append((half[:, None] * rule.weights[None, :]).ravel())
    return np.concatenate(zs), np.concatenate(ws)


def integrate_contour(f: Callable, path: Contour, rule: QuadratureRule, panels: int = 1) -> complex:
    """Composite Gauss-Legendre estimate of the path integral of ``f``.

    ``f`` must accept a complex numpy array and return values of the same shape.
    """
    z, w = contour_nodes(path, rule, panels)
    vals = np.asarray(f(z), dtype=complex)
    bad = ~np.isfinite(vals)
    if bad.any():
        node = complex(z[np.argmax(bad)])
        raise IntegrandBlowup(f"non-finite integrand at s={node}", node=node)
    return complex(np.sum(w * vals))


def integrate_adaptive(f: Callable, path: Contour, rule: QuadratureRule | None = None,
                       rtol: float = 1e-10, start_panels: int = 4, max_panels: int = 1024):
    """Double the panel count until two estimates agree to ``rtol``.

    Returns ``(value, panels, converged)``; non-convergence is reported, not hidden.
    """
    rule = rule or gauss_legendre_rule(64)
    panels = start_panels
    prev = integrate_contour(f, path, rule, panels)
    while panels < max_panels:
        panels *= 2
        cur = integrate_contour(f, path, rule, panels)
        if abs(cur - prev) <= rtol * abs(cur):
            return cur, panels, True
        prev = cur
    return prev, panels, False
