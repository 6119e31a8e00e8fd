"""The two interferometric schemes, built by composing element matrices.

Arm placement (the closed forms fix it uniquely):

* coupled MZI pair: zeta on the lower input before BS1, phi on the upper arm
  between BS1 and BS2;
* chain block: phi on the lower arm inside the MZI, psi after the MZI, upper
  side for odd blocks and lower side for even blocks (block 1 is upper).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .xfer import (
    FieldPair,
    Matrix2,
    Phase,
    bs_matrix,
    compose,
    identity,
    mat_apply,
    phase_matrix,
)


def mzi_block(phi: Phase) -> Matrix2:
    """BS . phase(phi, lower) . BS = 1/2 [[1-e, i(1+e)], [i(1+e), -(1-e)]], e = e^{i phi}."""
    bs = bs_matrix()
    return bs @ phase_matrix(phi, "lower") @ bs


def psi_block(phi: Phase, psi: Phase, side: str = "upper") -> Matrix2:
    return phase_matrix(psi, side) @ mzi_block(phi)


def first_stage_matrix(zeta: Phase) -> Matrix2:
    """BS1 after a zeta phase on the idler (lower) input."""
    return bs_matrix() @ phase_matrix(zeta, "lower")


@dataclass(frozen=True)
class CbwChainSpec:
    """``n`` MZI blocks joined by psi couplings of alternating side."""

    n: int
    phi: Phase
    psi: Phase

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ValueError(f"chain needs n >= 1 blocks, got {self.n!r}")

    def matrix(self) -> Matrix2:
        return cbw_chain(self)


@dataclass(frozen=True)
class Fig1Spec:
    """Two cascaded MZIs: zeta controls the first, phi the second."""

    zeta: Phase
    phi: Phase

    def matrix(self) -> Matrix2:
        return fig1_matrix(self)


def block_side(k: int) -> str:
    """Side of the psi coupling after block ``k`` (1-based)."""
    return "upper" if k % 2 == 1 else "lower"


def cbw_chain(spec: CbwChainSpec) -> Matrix2:
    """B_n ... B_2 B_1 with B_k = psi_block(phi, psi, block_side(k))."""
    upper = psi_block(spec.phi, spec.psi, "upper")
    if spec.n == 1:
        return upper
    lower = psi_block(spec.phi, spec.psi, "lower")
    blocks = [upper if block_side(k) == "upper" else lower for k in range(1, spec.n + 1)]
    return compose(*blocks)


def fig1_matrix(spec: Fig1Spec) -> Matrix2:
    bs = bs_matrix()
    return compose(phase_matrix(spec.zeta, "lower"), bs, phase_matrix(spec.phi, "upper"), bs)


# Elements usable in a Network. Each exposes ``matrix()``.


@dataclass(frozen=True)
class BeamSplitter:
    def matrix(self) -> Matrix2:
        return bs_matrix()


@dataclass(frozen=True)
class PhaseShift:
    arm: str
    theta: Phase

    def matrix(self) -> Matrix2:
        return phase_matrix(self.theta, self.arm)


@dataclass(frozen=True)
class MZI:
    phi: Phase

    def matrix(self) -> Matrix2:
        return mzi_block(self.phi)


Element = Union[BeamSplitter, PhaseShift, MZI, CbwChainSpec, Fig1Spec]


@dataclass(frozen=True)
class Network:
    """An input field followed by elements in propagation order."""

    input: FieldPair
    elements: tuple = field(default_factory=tuple)

    def matrix(self) -> Matrix2:
        if not self.elements:
            return identity()
        return compose(*(e.matrix() for e in self.elements))

    def output(self) -> FieldPair:
        return mat_apply(self.matrix(), self.input)

    def input_intensity(self) -> float:
        return float(self.input.total_intensity)
