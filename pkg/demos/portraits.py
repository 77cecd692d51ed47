"""Write phase portraits of the exact solution at a few times.

Colours encode arg u.  Going anticlockwise round a zero the hues run red,
yellow, green, cyan, blue, magenta; round a pole they run backwards.  Output
goes to ./portraits as binary PPM files with JSON sidecars.
"""

from pathlib import Path

from complexburgers import cli

out = Path("portraits")
for mu in (0.1, 1.0):
    for t in (0.5, 1.0, 2.0):
        sub = out / f"mu{mu}_t{t}"
        cli.cli_dispatch(["portrait", "--eval", "exact", "--mu", str(mu), "--t", str(t),
                          "--bounds", "-3", "3", "-3", "3", "--nx", "150", "--ny", "150", "--out", str(sub)])
