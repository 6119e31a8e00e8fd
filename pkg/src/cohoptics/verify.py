"""Cross-check of every closed form against generic matrix composition."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .networks import CbwChainSpec, Fig1Spec, cbw_chain, fig1_matrix, first_stage_matrix, mzi_block
from .observables import BOTH_PORTS, UPPER_ONLY, anticorrelation_zeros, coincidence_rate
from .xfer import TOL, unitarity_residual

GRID_POINTS = 1000
GRID_2D = 100


@dataclass(frozen=True)
class Check:
    name: str
    max_dev: float
    tol: float = TOL

    @property
    def ok(self) -> bool:
        return bool(self.max_dev < self.tol)

    def line(self) -> str:
        return f"{self.name:<12} max_abs_dev={self.max_dev:.3e}  {'PASS' if self.ok else 'FAIL'}"


def _dev(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _dev_up_to_phase(a, b) -> float:
    """Per-point deviation after aligning a global unimodular factor."""
    a = np.asarray(a)
    b = np.asarray(b)
    overlap = np.sum(a * np.conj(b), axis=0)
    c = overlap / np.abs(overlap)
    return float(np.max(np.sqrt(np.sum(np.abs(a - c * b) ** 2, axis=0))))


def run_checks(max_n: int = 8, points: int = GRID_POINTS) -> list[Check]:
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    grid = np.linspace(0.0, 2 * math.pi, points)
    g = np.linspace(0.0, 2 * math.pi, GRID_2D)
    zz, pp = np.meshgrid(g, g, indexing="ij")
    devs: dict[str, float] = {}
    unitarity = []
    conservation = []

    def record(name, value):
        devs[name] = max(devs.get(name, 0.0), value)

    m1 = first_stage_matrix(grid)
    i_a, i_b, r = coincidence_rate(m1, BOTH_PORTS)
    record("Eq1", _dev(r, oracle.r_alphabeta_eq1(grid)))
    unitarity.append(unitarity_residual(m1))
    conservation.append(_dev(i_a + i_b, 2.0))

    mf = fig1_matrix(Fig1Spec(zz, pp))
    record("Eq2", _dev(mf, oracle.fig1_closed_form(zz, pp)))
    i_a, i_b, r = coincidence_rate(mf, BOTH_PORTS)
    o_a, o_b = oracle.intensities_eq3_eq4(zz, pp)
    record("Eq3", _dev(i_a, o_a))
    record("Eq4", _dev(i_b, o_b))
    record("Eq5", _dev(r, oracle.r_ab_eq5(zz, pp)))
    unitarity.append(unitarity_residual(mf))
    conservation.append(_dev(i_a + i_b, 2.0))

    mz = mzi_block(grid)
    record("Eq6", _dev(mz, oracle.mzi_closed_form(grid)))
    record("MZI2", _dev(mz @ mz, -np.exp(1j * grid)[:, None, None] * np.eye(2)))
    unitarity.append(unitarity_residual(mz))

    m2 = cbw_chain(CbwChainSpec(2, grid, math.pi))
    e_a, e_b = oracle.eq8_first_column(grid)
    record("Eq8", max(_dev(m2[:, 0, 0], e_a), _dev(m2[:, 1, 0], e_b)))
    i_a, i_b, _ = coincidence_rate(m2, UPPER_ONLY)
    o_a, o_b = oracle.eq9_eq10_intensities(grid)
    record("Eq9", _dev(i_a, o_a))
    record("Eq10", _dev(i_b, o_b))

    for n in range(1, max_n + 1):
        m = cbw_chain(CbwChainSpec(n, grid, math.pi))
        col = np.stack([m[:, 0, 0], m[:, 1, 0]])
        record("Eq11", _dev_up_to_phase(col, np.stack(oracle.chain_first_column_eq11(n, grid))))
        i_a, i_b, r = coincidence_rate(m, UPPER_ONLY)
        o_a, o_b = oracle.cbw_intensities_eq12_eq13(n, grid)
        record("Eq12", _dev(i_a, o_a))
        record("Eq13", _dev(i_b, o_b))
        record("Eq14", _dev(r, oracle.r_ab_eq14(n, grid)))
        record("Zeros", max(coincidence_rate(cbw_chain(CbwChainSpec(n, z, math.pi)), UPPER_ONLY)[2]
                            for z in anticorrelation_zeros(n)))
        unitarity.append(unitarity_residual(m))
        conservation.append(_dev(i_a + i_b, 1.0))

    for n in range(2, max(max_n, 2) + 1, 2):
        m = cbw_chain(CbwChainSpec(n, grid, 0.0))
        c = m[:, 0, 0] / np.abs(m[:, 0, 0])
        record("Identity", _dev(m, c[:, None, None] * np.eye(2)))
        i_a, i_b, _ = coincidence_rate(m, UPPER_ONLY)
        record("Identity", max(_dev(i_a, 1.0), _dev(i_b, 0.0)))
        unitarity.append(unitarity_residual(m))

    checks = [Check(name, dev) for name, dev in devs.items()]
    checks.append(Check("Unitarity", max(unitarity)))
    checks.append(Check("Conservation", max(conservation)))
    return checks
