"""Follow the pole closest to the real axis for mu = 0.1 with three methods.

1. Newton on the exact Cole-Hopf denominator.
2. Newton on the steepest-descent (saddle) approximation of the denominator.
3. AAA rational fits of real-line snapshots, matched backwards in time.

The saddle path sits about 0.014 from the exact one; the AAA path about 2e-4.
"""

from complexburgers import aaa, poletrack, realline
from complexburgers.core import Method, sup_distance

MU = 0.1

seed = poletrack.closest_pole(MU, 0.3)
print(f"lowest pole at t = 0.3: {seed:.6f}")

exact = poletrack.track_pole(Method.EXACT_ROOT, MU, 0.3, 2.0, 0.05, seed, residues=True)
saddle = poletrack.track_pole(Method.SADDLE, MU, 0.3, 2.0, 0.05, seed)

# the real-line solver produces the data that AAA sees; no complex evaluation is used
snaps = realline.solve_real(MU, realline.SolveConfig(T=2.0, M=41))
rational = aaa.aaa_track(snaps, exact.at(2.0))

print(f"{'t':>5} {'exact':>24} {'saddle':>24} {'AAA':>24} {'residue':>10}")
for s in exact.samples[::5]:
    print(f"{s.t:5.2f} {s.z:24.6f} {saddle.at(s.t):24.6f} {rational.at(s.t):24.6f} {s.residue.real:10.6f}")

print(f"sup |exact - saddle| = {sup_distance(exact, saddle, 0.3, 2.0):.2e}")
print(f"sup |exact - AAA|    = {sup_distance(exact, rational, 0.3, 2.0):.2e}")
print(f"each residue should be -2 mu = {-2 * MU}")
