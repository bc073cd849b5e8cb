"""Quantum phases and quench dynamics of the anisotropic XY chain in a transverse field."""

from .chain import (
    ChainSpec,
    DegeneratePointError,
    Mode,
    bogoliubov_angle,
    dispersion,
    mode_at,
    modes_on_grid,
    momentum_grid,
)
from .edoracle import (
    GroundState,
    LoopResult,
    MAX_SITES,
    berry_phase_loop,
    build_hamiltonian,
    ground_state,
    holonomy_phase,
    mode_berry_numeric,
    state_parity,
)
from .geophase import (
    ModePhaseRecord,
    PhaseSummary,
    critical_phase,
    dphase_db,
    final_phase,
    mode_phase,
    mode_phase_at_time,
    mode_phase_record,
    mode_phase_xx,
    noncontractibility_scan,
    phase_summary,
    total_phase,
)
from .quench import (
    EvolveResult,
    KinkReport,
    QuenchSchedule,
    adiabatic_threshold,
    evolve_mode,
    field_at,
    kink_count,
    lz_probability,
)
from .rgflow import (
    COMPLETED,
    PhaseLabel,
    RGState,
    RGTrajectory,
    STRONG_COUPLING,
    classify_phase,
    flow_derivative,
    mass_gap,
    rg_flow,
)
from .sweeps import InvariantViolation, SweepGrid

__version__ = "0.1.0"

__all__ = [
    "ChainSpec",
    "DegeneratePointError",
    "Mode",
    "bogoliubov_angle",
    "dispersion",
    "mode_at",
    "modes_on_grid",
    "momentum_grid",
    "GroundState",
    "LoopResult",
    "MAX_SITES",
    "berry_phase_loop",
    "build_hamiltonian",
    "ground_state",
    "holonomy_phase",
    "mode_berry_numeric",
    "state_parity",
    "ModePhaseRecord",
    "PhaseSummary",
    "critical_phase",
    "dphase_db",
    "final_phase",
    "mode_phase",
    "mode_phase_at_time",
    "mode_phase_record",
    "mode_phase_xx",
    "noncontractibility_scan",
    "phase_summary",
    "total_phase",
    "EvolveResult",
    "KinkReport",
    "QuenchSchedule",
    "adiabatic_threshold",
    "evolve_mode",
    "field_at",
    "kink_count",
    "lz_probability",
    "COMPLETED",
    "PhaseLabel",
    "RGState",
    "RGTrajectory",
    "STRONG_COUPLING",
    "classify_phase",
    "flow_derivative",
    "mass_gap",
    "rg_flow",
    "InvariantViolation",
    "SweepGrid",
    "__version__",
]
