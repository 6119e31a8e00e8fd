"""Random-phase averaging of the coincidence rate (coherence washout).

A random phase theta is added to the idler phase zeta and the coincidence is
averaged over draws. Reproducibility: every grid point gets its own generator
seeded with ``mix_seed(seed, index)`` (SplitMix64 finalizer), and draws come
from numpy's PCG64, whose output stream is fixed across platforms. Results do
not depend on the number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .observables import first_stage_rates

MASK64 = (1 << 64) - 1
KINDS = ("uniform", "delta", "discrete")


def mix_seed(seed: int, index: int) -> int:
    """SplitMix64 of ``seed + (index + 1) * golden_gamma``."""
    z = (int(seed) + (int(index) + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class PhaseDistribution:
    kind: str
    params: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if not all(math.isfinite(v) for v in np.ravel(self.params)):
            raise ValueError("distribution parameters must be finite")
        if self.kind == "uniform":
            lo, hi = self.params
            if not hi > lo:
                raise ValueError(f"uniform needs hi > lo, got ({lo}, {hi})")
        elif self.kind == "delta":
            if len(self.params) != 1:
                raise ValueError("delta takes exactly one phase")
        else:
            if not self.params:
                raise ValueError("discrete distribution is empty")
            weights = [w for _, w in self.params]
            if any(w <= 0 for w in weights):
                raise ValueError("discrete weights must be positive")
            if abs(math.fsum(weights) - 1.0) > 1e-12:
                raise ValueError(f"discrete weights sum to {math.fsum(weights)!r}, not 1")

    @classmethod
    def uniform(cls, lo: float, hi: float) -> "PhaseDistribution":
        return cls("uniform", (float(lo), float(hi)))

    @classmethod
    def delta(cls, theta0: float) -> "PhaseDistribution":
        return cls("delta", (float(theta0),))

    @classmethod
    def discrete(cls, pairs) -> "PhaseDistribution":
        return cls("discrete", tuple((float(t), float(w)) for t, w in pairs))

    @property
    def is_degenerate(self) -> bool:
        return self.kind == "delta" or (self.kind == "discrete" and len(self.params) == 1)

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind == "uniform":
            lo, hi = self.params
            return lo + (hi - lo) * rng.random(size)
        if self.kind == "delta":
            return np.full(size, self.params[0])
        thetas = np.array([t for t, _ in self.params])
        weights = np.array([w for _, w in self.params])
        return thetas[rng.choice(len(thetas), size=size, p=weights / weights.sum())]


@dataclass(frozen=True)
class EnsembleResult:
    mean_r: float
    std_error: float
    samples: int
    seed: int


RateFn = Callable[[np.ndarray], np.ndarray]


def washout_mean(
    dist: PhaseDistribution,
    zeta0: float,
    samples: int,
    seed: int,
    rate: RateFn = first_stage_rates,
) -> EnsembleResult:
    """Mean coincidence over ``zeta0 + theta`` with theta drawn from ``dist``.

    ``rate`` maps an array of phases to coincidence rates; the default is the
    first beam splitter evaluated through its transfer matrix.
    """
    if isinstance(samples, bool) or int(samples) != samples or samples < 1:
        raise ValueError(f"samples must be a positive integer, got {samples!r}")
    if not isinstance(dist, PhaseDistribution):
        raise TypeError("dist must be a PhaseDistribution")
    if dist.is_degenerate:
        # no randomness: a single evaluation is exact and avoids summation error
        theta = dist.params[0] if dist.kind == "delta" else dist.params[0][0]
        r = float(np.asarray(rate(np.array([zeta0 + theta])))[0])
        return EnsembleResult(r, 0.0, int(samples), int(seed))
    rng = np.random.default_rng(int(seed) & MASK64)
    r = np.asarray(rate(zeta0 + dist.draw(rng, int(samples))), dtype=float)
    std = float(r.std(ddof=1)) if samples > 1 else 0.0
    return EnsembleResult(float(r.mean()), std / math.sqrt(samples), int(samples), int(seed))


def washout_scan(
    dist: PhaseDistribution,
    zeta_grid: Sequence[float],
    samples: int,
    seed: int,
    rate: RateFn = first_stage_rates,
    workers: int = 1,
) -> list[tuple[float, EnsembleResult]]:
    """``washout_mean`` at each grid point, in grid order."""
    grid = [float(z) for z in zeta_grid]
    if not grid:
        raise ValueError("zeta grid is empty")

    def point(i: int):
        return grid[i], washout_mean(dist, grid[i], samples, mix_seed(seed, i), rate)

    if workers <= 1:
        return [point(i) for i in range(len(grid))]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(point, range(len(grid))))


def scan_visibility(results: Sequence[tuple[float, EnsembleResult]]) -> float:
    means = np.array([res.mean_r for _, res in results])
    hi, lo = means.max(), means.min()
    return 0.0 if hi + lo == 0 else float((hi - lo) / (hi + lo))
