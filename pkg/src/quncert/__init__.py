"""Closed-system quantum dynamics with time-energy uncertainty analyzers."""

from .hilbert import (
    ConvergenceError,
    SpectralDecomposition,
    commutator,
    eigendecompose,
    hermitian_defect,
    inner,
    propagator,
    require_hermitian,
)
from .qstat import (
    CoherenceSummary,
    StatSummary,
    coherence_from_amplitudes,
    expectation,
    l1_coherence,
    stats,
)
from .dynamics import (
    ConservationReport,
    OffsetInvarianceReport,
    Scenario,
    SeriesStats,
    TimeGrid,
    Trajectory,
    check_conservation,
    default_time_grid,
    ehrenfest_rate,
    ehrenfest_residual,
    energy_amplitudes,
    evolve,
    offset_invariance_check,
    shift_hamiltonian,
)
from .uncertainty import (
    BoundCheck,
    InconclusiveScanError,
    MTSample,
    OrthogonalizationResult,
    SpeedLimitBounds,
    ml_bounds,
    mt_sample,
    mt_series,
    orthogonalization_time,
    qsl_tau,
    robertson_check,
    schrodinger_check,
    state_overlap,
)
from .qubit import (
    FIGURE_PRESETS,
    QubitPreset,
    TickTockReport,
    analytic_energy_spread,
    analytic_mt_delta_t,
    analytic_sx_mean,
    analytic_sx_rate,
    analytic_sx_std,
    pauli,
    qubit_scenario,
    spin_projectors,
    tick_tock,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCheck",
    "CoherenceSummary",
    "ConservationReport",
    "ConvergenceError",
    "FIGURE_PRESETS",
    "InconclusiveScanError",
    "MTSample",
    "OffsetInvarianceReport",
    "OrthogonalizationResult",
    "QubitPreset",
    "Scenario",
    "SeriesStats",
    "SpectralDecomposition",
    "SpeedLimitBounds",
    "StatSummary",
    "TickTockReport",
    "TimeGrid",
    "Trajectory",
    "analytic_energy_spread",
    "analytic_mt_delta_t",
    "analytic_sx_mean",
    "analytic_sx_rate",
    "analytic_sx_std",
    "check_conservation",
    "coherence_from_amplitudes",
    "commutator",
    "default_time_grid",
    "ehrenfest_rate",
    "ehrenfest_residual",
    "eigendecompose",
    "energy_amplitudes",
    "evolve",
    "expectation",
    "hermitian_defect",
    "inner",
    "l1_coherence",
    "ml_bounds",
    "mt_sample",
    "mt_series",
    "offset_invariance_check",
    "orthogonalization_time",
    "pauli",
    "propagator",
    "qsl_tau",
    "qubit_scenario",
    "require_hermitian",
    "robertson_check",
    "schrodinger_check",
    "shift_hamiltonian",
    "spin_projectors",
    "state_overlap",
    "stats",
    "tick_tock",
]
