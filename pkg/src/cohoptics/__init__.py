"""Deterministic two-mode coherence optics: coupled Mach-Zehnder interferometers
as 2x2 transfer matrices, coincidence rates, and random-phase washout."""

from .ensemble import EnsembleResult, PhaseDistribution, washout_mean, washout_scan
from .netdsl import ParseError, bind, load, parse
from .networks import (
    CbwChainSpec,
    Fig1Spec,
    Network,
    cbw_chain,
    fig1_matrix,
    first_stage_matrix,
    mzi_block,
    psi_block,
)
from .observables import (
    CoincidenceSample,
    ScanResult,
    anticorrelation_zeros,
    coincidence_chain,
    coincidence_fig1,
    coincidence_first_stage,
    fringe_period,
    intensities,
    visibility,
)
from .xfer import (
    FieldPair,
    PhaseSpec,
    approx_eq_up_to_global_phase,
    bs_matrix,
    mat_apply,
    mat_mul,
    phase_matrix,
    phase_of,
    unitarity_residual,
)
