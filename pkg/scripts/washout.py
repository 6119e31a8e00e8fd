"""Coincidence vs zeta averaged over random phases of decreasing spread.

    python scripts/washout.py [outdir] [samples]
"""

import math
import sys
from pathlib import Path

import numpy as np

from cohoptics.ensemble import PhaseDistribution, scan_visibility, washout_scan
from cohoptics.observables import format_csv

WIDTHS = {"2pi": 2 * math.pi, "pi": math.pi, "pi_2": math.pi / 2, "0.2": 0.2, "0": 0.0}


def main(outdir="results", samples="100000"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    grid = np.linspace(0, 2 * math.pi, 64)
    for label, w in WIDTHS.items():
        dist = PhaseDistribution.delta(0.0) if w == 0 else PhaseDistribution.uniform(-w / 2, w / 2)
        res = washout_scan(dist, grid, int(samples), seed=2020)
        rows = [(z, r.mean_r, r.std_error, r.samples) for z, r in res]
        path = out / f"washout_width_{label}.csv"
        path.write_text(format_csv(("param", "mean_r", "std_error", "samples"), rows))
        print(f"{path}: visibility {scan_visibility(res):.4f} (sin(w)/w = {math.sin(w) / w if w else 1.0:.4f})")


if __name__ == "__main__":
    main(*sys.argv[1:])
