"""Measurable quantities: port intensities, normalized coincidence, fringe metrics.

The coincidence rate is the product of the two output intensities divided by
``(P/2)**2``, where ``P`` is the total input intensity. That is the largest
value the product can take, so ``r`` lies in [0, 1]. For the inputs used by the
schemes it gives I0**2 for (E0, E0) and I0**2/4 for (E0, 0).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .networks import CbwChainSpec, Fig1Spec, Network, cbw_chain, fig1_matrix, first_stage_matrix
from .xfer import FieldPair, Matrix2, mat_apply

FIELDS = ("i_a", "i_b", "r")
BOTH_PORTS = FieldPair(1.0 + 0j, 1.0 + 0j)
UPPER_ONLY = FieldPair(1.0 + 0j, 0j)


@dataclass(frozen=True)
class CoincidenceSample:
    param: float
    i_a: float
    i_b: float
    r: float
    norm: float = 1.0

    @property
    def g2(self) -> float:
        """The normalized chain coincidence read as an intensity correlation."""
        return self.r


def coincidence_norm(input_field: FieldPair) -> float:
    return (float(input_field.total_intensity) / 2.0) ** 2


def intensities(m: Matrix2, input_field: FieldPair):
    return mat_apply(m, input_field).intensities


def coincidence_rate(m: Matrix2, input_field: FieldPair):
    i_a, i_b = intensities(m, input_field)
    return i_a, i_b, i_a * i_b / coincidence_norm(input_field)


def _sample(param, m, input_field) -> CoincidenceSample:
    i_a, i_b, r = coincidence_rate(m, input_field)
    return CoincidenceSample(float(param), float(i_a), float(i_b), float(r), coincidence_norm(input_field))


def coincidence_first_stage(zeta: float) -> CoincidenceSample:
    return _sample(zeta, first_stage_matrix(zeta), BOTH_PORTS)


def first_stage_rates(zetas) -> np.ndarray:
    """Vectorized ``coincidence_first_stage(z).r`` over an array of phases."""
    return coincidence_rate(first_stage_matrix(np.asarray(zetas, dtype=float)), BOTH_PORTS)[2]


def coincidence_fig1(zeta: float, phi: float) -> CoincidenceSample:
    return _sample(phi, fig1_matrix(Fig1Spec(zeta, phi)), BOTH_PORTS)


def coincidence_chain(n: int, phi: float, psi: float) -> CoincidenceSample:
    return _sample(phi, cbw_chain(CbwChainSpec(n, phi, psi)), UPPER_ONLY)


def _field_values(samples: Sequence[CoincidenceSample], name: str) -> np.ndarray:
    if name not in FIELDS:
        raise ValueError(f"field must be one of {FIELDS}, got {name!r}")
    return np.array([getattr(s, name) for s in samples], dtype=float)


def visibility(samples: Sequence[CoincidenceSample], field: str = "r") -> float:
    """Fringe contrast (max - min) / (max + min); 0 for an all-zero trace."""
    if len(samples) < 2:
        raise ValueError("visibility needs at least 2 samples")
    v = _field_values(samples, field)
    hi, lo = v.max(), v.min()
    if hi + lo == 0:
        return 0.0
    return float((hi - lo) / (hi + lo))


def fringe_period(samples: Sequence[CoincidenceSample], field: str = "r") -> float:
    """Dominant period from the peak of the DFT magnitude (mean removed).

    The record length is ``N * step``, which is the span the DFT implicitly
    assumes; the grid must be uniform and the record at least 2*pi long.
    """
    if len(samples) < 16:
        raise ValueError("fringe_period needs at least 16 samples")
    x = np.array([s.param for s in samples], dtype=float)
    steps = np.diff(x)
    step = steps.mean()
    if step <= 0 or np.max(np.abs(steps - step)) > 1e-9 * max(1.0, abs(step)):
        raise ValueError("fringe_period needs a uniform increasing grid")
    span = len(x) * step
    if span < 2 * math.pi * (1 - 1e-9):
        raise ValueError(f"grid spans {span:.6g} rad, need at least 2*pi")
    v = _field_values(samples, field)
    spectrum = np.abs(np.fft.rfft(v - v.mean()))
    k = int(np.argmax(spectrum[1:])) + 1
    return float(span / k)


def anticorrelation_zeros(n: int) -> list[float]:
    """Chain phases m*pi/n (m = 0..n) where the coincidence vanishes at psi = pi."""
    zeros = [m * math.pi / n for m in range(n + 1)]
    for phi in zeros:
        r = coincidence_chain(n, phi, math.pi).r
        if not r < 1e-12:
            raise ArithmeticError(f"coincidence {r:.3e} at phi={phi} is not a zero for n={n}")
    return zeros


@dataclass
class ScanResult:
    """Intensities and coincidence over a 1-D parameter grid."""

    name: str
    param: np.ndarray
    i_a: np.ndarray
    i_b: np.ndarray
    r: np.ndarray
    input_intensity: float = 1.0

    def samples(self) -> list[CoincidenceSample]:
        norm = (self.input_intensity / 2) ** 2
        return [
            CoincidenceSample(float(p), float(a), float(b), float(r), norm)
            for p, a, b, r in zip(self.param, self.i_a, self.i_b, self.r)
        ]

    def rows(self):
        for p, a, b, r in zip(self.param, self.i_a, self.i_b, self.r):
            yield p, a, b, r

    def to_csv(self) -> str:
        return format_csv(("param", "i_a", "i_b", "r"), self.rows())

    def to_json(self) -> str:
        return format_json(("param", "i_a", "i_b", "r"), self.rows())


def scan_network(network: Network, name: str, grid) -> ScanResult:
    """Evaluate a network whose element phases are arrays over ``grid``."""
    grid = np.asarray(grid, dtype=float)
    i_a, i_b, r = coincidence_rate(network.matrix(), network.input)
    shape = grid.shape
    return ScanResult(
        name,
        grid,
        np.broadcast_to(i_a, shape).astype(float),
        np.broadcast_to(i_b, shape).astype(float),
        np.broadcast_to(r, shape).astype(float),
        network.input_intensity(),
    )


def linear_grid(lo: float, hi: float, steps: int) -> np.ndarray:
    """Uniform grid including both endpoints, spacing (hi - lo)/(steps - 1)."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got {lo} >= {hi}")
    return lo + (hi - lo) * np.arange(steps) / (steps - 1)


def fmt(x) -> str:
    # + 0.0 folds -0.0 into 0.0
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x) + 0.0, ".15g")


def format_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def format_json(header, rows) -> str:
    recs = []
    for row in rows:
        recs.append({k: (int(v) if isinstance(v, (int, np.integer)) else float(fmt(v))) for k, v in zip(header, row)})
    return json.dumps(recs, indent=1) + "\n"
