"""Large-time similarity solution and its pole rows.

For large t, u ~ sqrt(mu/t) Psi(z / sqrt(mu t)), where gamma = coth(pi/(4 mu))
keeps the mass equal to pi.  Poles of Psi are zeros of gamma - erf(eta/2).
"""

import math

from complexburgers import colehopf, largetime as lt
from complexburgers.core import PhysParams
from complexburgers.inner import Quadrant

MU = 1.0
sp = lt.SimilarityParams.from_mu(MU)
print(f"gamma = {sp.gamma:.12f}, mass = {sp.mass:.12f}")

for n, pred in enumerate(lt.predicted_psi_poles(sp, 6, Quadrant.FIRST), start=1):
    found = lt.find_psi_pole(pred, sp)
    print(f"n={n}: predicted {pred:.5f}  Newton {found:.5f}  residue {lt.psi_residue(found, sp):.6f}")

rho = lt.psi_pole_moduli(sp, 21, Quadrant.FIRST)
print(f"spacing at n=20: {rho[20] - rho[19]:.5f} vs sqrt(2 pi/20) = {math.sqrt(2 * math.pi / 20):.5f}")
print(f"anti-Stokes radius n=20: {lt.antistokes_radius(20, 1.0, MU, Quadrant.FIRST):.5f} vs rho_20 = {rho[19]:.5f}")

for t in (10.0, 100.0, 1000.0):
    xs = [k * 0.25 * math.sqrt(MU * t) for k in range(-20, 41)]
    ex = [colehopf.evaluate_u(x, PhysParams(MU, t)).real for x in xs]
    ap = [lt.u_largetime(x, t, MU).real for x in xs]
    gap = max(abs(a - b) for a, b in zip(ex, ap)) / max(abs(a) for a in ex)
    print(f"t = {t:6.0f}: relative gap to the exact profile {gap:.3f}")
