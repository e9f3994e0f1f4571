"""Closed-system evolution under a time-independent Hamiltonian.

Evolution is spectral: the initial state is expanded over the energy
eigenbasis once and each grid time applies pure phase factors.  On top of the
trajectories sit the conservation, offset-invariance and Ehrenfest-rate
checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import qstat
from .hilbert import (
    SpectralDecomposition,
    as_complex_matrix,
    as_state,
    eigendecompose,
    require_hermitian,
)

CONSERVATION_TOL = 1e-10
OFFSET_TOL = 1e-10
# centered-difference step as a fraction of the fastest oscillation period
FD_STEP_FRACTION = 1e-4
RATE_IMAG_TOL = 1e-9
DEFAULT_STEPS = 1000

_NAME_OK = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_"


@dataclass(frozen=True)
class TimeGrid:
    """Uniform sampling grid: `steps` points from start to stop inclusive."""

    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("time grid bounds must be finite")
        if not self.stop > self.start:
            raise ValueError(f"stop must exceed start, got [{self.start}, {self.stop}]")
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")

    def times(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.steps - 1)


def _validated_observables(observables, dim: int) -> dict:
    out = {}
    for name, matrix in observables.items():
        if not name or any(ch not in _NAME_OK for ch in name):
            raise ValueError(f"observable name {name!r} is not an identifier")
        if name == "energy":
            raise ValueError("'energy' is reserved for the Hamiltonian series")
        if name in out:
            raise ValueError(f"duplicate observable name {name!r}")
        m = require_hermitian(matrix, f"observable {name!r}")
        if m.shape[0] != dim:
            raise ValueError(
                f"observable {name!r} has dimension {m.shape[0]}, expected {dim}"
            )
        out[name] = m
    return out


@dataclass(frozen=True)
class Scenario:
    """Hamiltonian, initial state, sampling grid, and named observables."""

    hbar: float
    hamiltonian: np.ndarray
    initial_state: np.ndarray
    time_grid: TimeGrid
    observables: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (math.isfinite(self.hbar) and self.hbar > 0):
            raise ValueError(f"hbar must be positive and finite, got {self.hbar!r}")
        h = require_hermitian(self.hamiltonian, "hamiltonian")
        if h.shape[0] < 2:
            raise ValueError("scenario needs dimension >= 2")
        psi = as_state(self.initial_state, "initial_state", norm_tol=1e-12)
        if psi.shape[0] != h.shape[0]:
            raise ValueError(
                f"initial_state dimension {psi.shape[0]} does not match "
                f"hamiltonian dimension {h.shape[0]}"
            )
        object.__setattr__(self, "hamiltonian", h)
        object.__setattr__(self, "initial_state", psi)
        object.__setattr__(
            self, "observables", _validated_observables(self.observables, h.shape[0])
        )

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


def default_time_grid(hamiltonian, hbar: float = 1.0, steps: int = DEFAULT_STEPS) -> TimeGrid:
    """Two characteristic periods: [0, 4*pi*hbar/(E_max - E_min)].

    A fully degenerate spectrum has no characteristic frequency; the grid
    falls back to [0, 4*pi].
    """
    spec = (
        hamiltonian
        if isinstance(hamiltonian, SpectralDecomposition)
        else eigendecompose(hamiltonian)
    )
    span = spec.span
    stop = 4.0 * math.pi * hbar / span if span > 0.0 else 4.0 * math.pi
    return TimeGrid(0.0, stop, steps)


@dataclass(frozen=True)
class SeriesStats:
    """Per-time mean/variance/stddev arrays for one observable."""

    mean: np.ndarray
    variance: np.ndarray
    stddev: np.ndarray


@dataclass(frozen=True)
class Trajectory:
    """Sampled evolution: per-observable statistics plus coherence series."""

    times: np.ndarray
    observables: dict            # name -> SeriesStats
    energy: SeriesStats
    coherence: np.ndarray
    predictability: np.ndarray
    states: np.ndarray | None    # (dim, len(times)) column snapshots, optional
    hbar: float
    energy_span: float           # E_max - E_min of the generating Hamiltonian


def energy_amplitudes(state, spec: SpectralDecomposition) -> np.ndarray:
    """Expansion coefficients of a state over the eigenbasis, ascending order."""
    psi = as_state(state)
    if spec.dim != psi.shape[0]:
        raise ValueError(f"dimension mismatch: {spec.dim} vs {psi.shape[0]}")
    return spec.eigenvectors.conj().T @ psi


def _series_stats(matrix: np.ndarray, states: np.ndarray, what: str) -> SeriesStats:
    a_states = matrix @ states
    means_c = np.einsum("it,it->t", states.conj(), a_states)
    worst = float(np.max(np.abs(means_c.imag)))
    if worst >= qstat.MEAN_IMAG_TOL:
        raise ValueError(
            f"{what} series has imaginary residue {worst:.3e}; "
            "inputs are not Hermitian"
        )
    means = means_c.real
    # shifted variance ||(A - <A>) psi||^2: nonnegative by construction and
    # free of the second-minus-squared-mean cancellation near eigenstates
    residuals = a_states - states * means
    variances = np.einsum("it,it->t", residuals.conj(), residuals).real
    variances = np.clip(variances, 0.0, None)
    return SeriesStats(means, variances, np.sqrt(variances))


def evolve(scenario: Scenario, store_states: bool = True) -> Trajectory:
    """Sample the closed-system evolution over the scenario's time grid.

    Each time applies phase factors exp(-i E_k t / hbar) to the initial
    energy amplitudes; the statistics and the coherence series are then
    recomputed from the reassembled state at every grid point.
    """
    spec = eigendecompose(scenario.hamiltonian)
    times = scenario.time_grid.times()
    alpha0 = spec.eigenvectors.conj().T @ scenario.initial_state
    phases = np.exp(-1j * np.outer(spec.eigenvalues, times) / scenario.hbar)
    states = spec.eigenvectors @ (alpha0[:, None] * phases)

    series = {
        name: _series_stats(matrix, states, f"observable {name!r}")
        for name, matrix in scenario.observables.items()
    }
    energy = _series_stats(scenario.hamiltonian, states, "energy")

    amps = spec.eigenvectors.conj().T @ states
    mods = np.abs(amps)
    n = scenario.dim
    coherence = (mods.sum(axis=0) ** 2 - (mods**2).sum(axis=0)) / (n - 1)
    coherence = np.clip(coherence, 0.0, None)
    if n == 2:
        # exact two-level factorization of sqrt(1 - C^2); see
        # qstat.coherence_from_amplitudes for why the sqrt form is avoided
        predictability = np.abs(mods[0] ** 2 - mods[1] ** 2)
    else:
        predictability = np.sqrt(np.clip(1.0 - coherence**2, 0.0, None))

    return Trajectory(
        times=times,
        observables=series,
        energy=energy,
        coherence=coherence,
        predictability=predictability,
        states=states if store_states else None,
        hbar=scenario.hbar,
        energy_span=spec.span,
    )


@dataclass(frozen=True)
class ConservationReport:
    """Max drift from the initial value for each conserved series."""

    drifts: dict            # series name -> max |x(t) - x(0)|
    tolerance: float
    passed: bool

    @property
    def max_drift(self) -> float:
        return max(self.drifts.values())


def check_conservation(trajectory: Trajectory, tol: float = CONSERVATION_TOL) -> ConservationReport:
    """Verify that energy statistics and coherence stay constant in time."""
    series = {
        "energy_mean": trajectory.energy.mean,
        "energy_variance": trajectory.energy.variance,
        "energy_stddev": trajectory.energy.stddev,
        "coherence": trajectory.coherence,
        "predictability": trajectory.predictability,
    }
    drifts = {
        name: float(np.max(np.abs(values - values[0])))
        for name, values in series.items()
    }
    return ConservationReport(drifts, tol, all(d < tol for d in drifts.values()))


def shift_hamiltonian(hamiltonian, offset: float) -> np.ndarray:
    """H + offset * identity."""
    h = require_hermitian(hamiltonian, "hamiltonian")
    if not (isinstance(offset, (int, float)) and math.isfinite(offset)):
        raise ValueError(f"offset must be a finite real, got {offset!r}")
    return h + float(offset) * np.eye(h.shape[0], dtype=np.complex128)


@dataclass(frozen=True)
class OffsetInvarianceReport:
    """Physics comparison between H and H + offset * identity evolutions."""

    offset: float
    max_observable_diff: float     # over all named observables and times
    max_phase_defect: float        # max | |<psi(t)|psi'(t)>| - 1 |
    max_energy_shift_defect: float # max | <H'>(t) - <H>(t) - offset |
    tolerance: float
    passed: bool


def offset_invariance_check(
    scenario: Scenario, offset: float, tol: float = OFFSET_TOL
) -> OffsetInvarianceReport:
    """Energy-offset invariance: identical physics, a global phase in the state."""
    base = evolve(scenario, store_states=True)
    shifted_scenario = replace(
        scenario, hamiltonian=shift_hamiltonian(scenario.hamiltonian, offset)
    )
    shifted = evolve(shifted_scenario, store_states=True)

    diffs = [0.0]
    for name, ref in base.observables.items():
        other = shifted.observables[name]
        diffs.append(float(np.max(np.abs(other.mean - ref.mean))))
        diffs.append(float(np.max(np.abs(other.variance - ref.variance))))
        diffs.append(float(np.max(np.abs(other.stddev - ref.stddev))))
    diffs.append(float(np.max(np.abs(shifted.coherence - base.coherence))))
    diffs.append(float(np.max(np.abs(shifted.predictability - base.predictability))))
    max_diff = max(diffs)

    overlaps = np.einsum("it,it->t", base.states.conj(), shifted.states)
    phase_defect = float(np.max(np.abs(np.abs(overlaps) - 1.0)))
    energy_defect = float(
        np.max(np.abs(shifted.energy.mean - base.energy.mean - offset))
    )
    passed = max_diff < tol and phase_defect < tol and energy_defect < tol
    return OffsetInvarianceReport(
        offset, max_diff, phase_defect, energy_defect, tol, passed
    )


def ehrenfest_rate(observable, hamiltonian, state, hbar: float = 1.0) -> float:
    """Exact mean-motion rate d<A>/dt = <[A, H]> / (i hbar).

    Works on raw arrays so the imaginary-residue guard can flag non-Hermitian
    inputs that slipped past construction-time validation.
    """
    a = as_complex_matrix(observable, "observable")
    h = as_complex_matrix(hamiltonian, "hamiltonian")
    psi = np.asarray(state, dtype=np.complex128)
    value = complex(np.vdot(psi, (a @ h - h @ a) @ psi)) / (1j * hbar)
    if abs(value.imag) >= RATE_IMAG_TOL:
        raise ValueError(
            f"commutator rate has imaginary residue {value.imag:.3e}; "
            "inputs are not Hermitian"
        )
    return float(value.real)


def default_fd_step(spec: SpectralDecomposition, hbar: float) -> float:
    """FD_STEP_FRACTION of the fastest period 2*pi*hbar/(E_max - E_min)."""
    span = spec.span
    if span <= 0.0:
        return FD_STEP_FRACTION
    return FD_STEP_FRACTION * (2.0 * math.pi * hbar / span)


def ehrenfest_residual(
    observable, scenario: Scenario, t: float, fd_step: float | None = None
) -> float:
    """|centered difference of <A> - exact commutator rate| at time t.

    The centered difference uses exact spectral evolution at t +- fd_step, so
    the residual is pure O(fd_step^2) truncation error.
    """
    a = require_hermitian(observable, "observable")
    if a.shape[0] != scenario.dim:
        raise ValueError(
            f"observable has dimension {a.shape[0]}, expected {scenario.dim}"
        )
    spec = eigendecompose(scenario.hamiltonian)
    if fd_step is None:
        fd_step = default_fd_step(spec, scenario.hbar)
    if not (math.isfinite(fd_step) and fd_step > 0):
        raise ValueError(f"fd_step must be positive and finite, got {fd_step!r}")

    alpha0 = spec.eigenvectors.conj().T @ scenario.initial_state

    def state_at(tau: float) -> np.ndarray:
        phases = np.exp(-1j * spec.eigenvalues * (tau / scenario.hbar))
        return spec.eigenvectors @ (alpha0 * phases)

    def mean_at(tau: float) -> float:
        psi = state_at(tau)
        value = complex(np.vdot(psi, a @ psi))
        if abs(value.imag) >= qstat.MEAN_IMAG_TOL:
            raise ValueError(
                f"expectation value has imaginary residue {value.imag:.3e}"
            )
        return float(value.real)

    fd = (mean_at(t + fd_step) - mean_at(t - fd_step)) / (2.0 * fd_step)
    exact = ehrenfest_rate(a, scenario.hamiltonian, state_at(t), scenario.hbar)
    return abs(fd - exact)
