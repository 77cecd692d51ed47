"""Real-line diagnostics: maximum slope, enstrophy and the turning time.

For small mu the maximum slope first grows, as in the inviscid problem, and
then decays.  Above the borderline value mu~ it decays from the start.
"""

from complexburgers import realline

for mu in (0.05, 0.1, 0.3):
    snaps = realline.solve_real(mu, realline.SolveConfig(T=2.0, M=9))
    slopes = [realline.max_abs_slope(s)[1] for s in snaps]
    ens = [realline.enstrophy(s) for s in snaps]
    print(f"mu = {mu}: initial trend {realline.initial_slope_trend(mu):+.4f}")
    for s, m, e in zip(snaps, slopes, ens):
        print(f"  t = {s.t:4.2f}  max|u_x| = {m:.5f}  enstrophy = {e:.5f}  mass = {realline.mass(s):.10f}")

print(f"slope turning time at mu = 0.02574: {realline.slope_turning_time(0.02574):.4f}")
