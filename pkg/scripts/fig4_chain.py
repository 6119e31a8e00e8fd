"""Datasets for the psi = pi chain: intensities and coincidence vs phi for
n = 1..4, with the fitted fringe period for each n.

    python scripts/fig4_chain.py [outdir]
"""

import math
import sys
from pathlib import Path

from cohoptics.networks import CbwChainSpec, cbw_chain
from cohoptics.observables import UPPER_ONLY, ScanResult, coincidence_rate, fringe_period, linear_grid


def main(outdir="results"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    phi = linear_grid(0, 2 * math.pi, 1000)
    for n in range(1, 5):
        i_a, i_b, r = coincidence_rate(cbw_chain(CbwChainSpec(n, phi, math.pi)), UPPER_ONLY)
        scan = ScanResult("PHI", phi, i_a, i_b, r)
        path = out / f"fig4_n{n}.csv"
        path.write_text(scan.to_csv())
        step = phi[1] - phi[0]
        print(f"{path}: n * period(r) = {n * fringe_period(scan.samples()):.5f} (pi = {math.pi:.5f}, grid step {step:.5f})")


if __name__ == "__main__":
    main(*sys.argv[1:])
