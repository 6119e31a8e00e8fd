"""Datasets for the coupled-MZI scans: intensities and coincidence vs phi for
several zeta, plus the zeta = 0 trace.

    python scripts/fig2_coupled_mzi.py [outdir]
"""

import math
import sys
from pathlib import Path

from cohoptics.networks import Fig1Spec, fig1_matrix
from cohoptics.observables import BOTH_PORTS, coincidence_rate, format_csv, linear_grid

ZETAS = {"0": 0.0, "pi_6": math.pi / 6, "pi_3": math.pi / 3, "pi_2": math.pi / 2}


def main(outdir="results"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    phi = linear_grid(0, 2 * math.pi, 1000)
    for label, zeta in ZETAS.items():
        i_a, i_b, r = coincidence_rate(fig1_matrix(Fig1Spec(zeta, phi)), BOTH_PORTS)
        path = out / f"fig2_zeta_{label}.csv"
        path.write_text(format_csv(("param", "i_a", "i_b", "r"), zip(phi, i_a, i_b, r)))
        print(f"{path}: visibility(i_a)={(i_a.max() - i_a.min()) / (i_a.max() + i_a.min()):.4f}, min r={r.min():.2e}")


if __name__ == "__main__":
    main(*sys.argv[1:])
