"""Poles of the small-time inner solution and the borderline viscosity.

Near z = i and for small t the solution is t^(-1/2) Phi0((z - i)/t^(1/2)),
with Phi0 built from parabolic cylinder functions.  Its poles lie on two rows,
one per quadrant, whose moduli solve transcendental equations.  The lowest
pole crosses the real xi axis at the borderline viscosity mu*.
"""

from complexburgers import inner
from complexburgers.inner import Quadrant

MU = 1.0
for q in (Quadrant.FIRST, Quadrant.SECOND):
    print(f"{q.value} quadrant, mu = {MU}")
    for pole in inner.predicted_poles(MU, 5, q):
        found = inner.find_pole(pole.xi, MU, strict=False)
        print(f"  n={pole.n}: predicted {pole.xi:.5f}  root-found {found:.5f}  gap {abs(found - pole.xi):.3f}")

for mu in (0.1, 0.14, 0.15, 0.2):
    print(f"lowest pole of Phi0 at mu = {mu}: {inner.lowest_pole(mu):.6f}")
print(f"borderline mu* = {inner.critical_mu():.6f}")
