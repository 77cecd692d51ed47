"""Complex-plane singularities of the viscous Burgers equation.

The package follows the poles of the solution of u_t + u u_x = mu u_xx with
u(x, 0) = 1/(1 + x^2) through several independent routes: the exact
Cole-Hopf integral, a saddle-point approximation, an inner (small-time)
problem, AAA rational fits of real-line data, and a large-time similarity
solution.  Generalised data 1/(1 + x^2)^beta are covered at small times.
"""

from . import (aaa, colehopf, core, errors, generalbeta, inner, inviscid, largetime, poletrack,
               quadrature, realline, render, specfun)
from .core import Grid2D, Method, PhysParams, PoleTrajectory, build_grid

__version__ = "0.1.0"

__all__ = ["aaa", "colehopf", "core", "errors", "generalbeta", "inner", "inviscid", "largetime",
           "poletrack", "quadrature", "realline", "render", "specfun", "Grid2D", "Method",
           "PhysParams", "PoleTrajectory", "build_grid", "__version__"]
