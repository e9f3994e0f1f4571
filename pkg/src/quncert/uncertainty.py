"""Preparation-uncertainty bounds and time-energy analyzers.

Robertson and Schrodinger bound checks, Mandelstam-Tamm timescales built from
the exact commutator rate, survival overlap with the orthogonalization-time
search, Margolus-Levitin style lower bounds, and the unified quantum speed
limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qstat
from .dynamics import Scenario, ehrenfest_rate
from .hilbert import SpectralDecomposition, as_state, eigendecompose, require_hermitian

BOUND_SLACK_TOL = 1e-10
# below this the Mandelstam-Tamm clock is undefined (energy eigenstate)
ENERGY_SPREAD_MIN = 1e-12
# scale factor for the rate threshold that flags a sample as infinite
RATE_EPS_FACTOR = 1e-12
# mean shifted energies below this flag the bound as infinite
MEAN_ENERGY_MIN = 1e-14
DEFAULT_TOL_ORTH = 1e-9
SCAN_POINTS = 10_000
HORIZON_PERIODS = 20
REFINE_REL_TOL = 1e-12


@dataclass(frozen=True)
class BoundCheck:
    """One inequality instance: lhs >= rhs expected, slack = lhs - rhs."""

    lhs: float
    rhs: float
    slack: float
    satisfied: bool

    @classmethod
    def of(cls, lhs: float, rhs: float) -> "BoundCheck":
        slack = lhs - rhs
        return cls(lhs, rhs, slack, slack >= -BOUND_SLACK_TOL)


def _pair_stats(a, b, state):
    a = require_hermitian(a, "first observable")
    b = require_hermitian(b, "second observable")
    psi = as_state(state, norm_tol=qstat.STATE_NORM_TOL)
    if a.shape[0] != psi.shape[0] or b.shape[0] != psi.shape[0]:
        raise ValueError("observable/state dimension mismatch")
    a_psi = a @ psi
    b_psi = b @ psi
    mean_a = float(np.real(np.vdot(psi, a_psi)))
    mean_b = float(np.real(np.vdot(psi, b_psi)))
    res_a = a_psi - mean_a * psi
    res_b = b_psi - mean_b * psi
    var_a = float(np.real(np.vdot(res_a, res_a)))
    var_b = float(np.real(np.vdot(res_b, res_b)))
    # <AB> = <A psi | B psi> for Hermitian A
    ab = complex(np.vdot(a_psi, b_psi))
    return mean_a, mean_b, math.sqrt(var_a), math.sqrt(var_b), ab


def robertson_check(a, b, state) -> BoundCheck:
    """dA * dB >= |<[A, B]>| / 2 on the given state."""
    _, _, sd_a, sd_b, ab = _pair_stats(a, b, state)
    # <[A,B]> = <AB> - <BA> = 2i Im<AB>
    rhs = abs(ab.imag)
    return BoundCheck.of(sd_a * sd_b, rhs)


def schrodinger_check(a, b, state) -> BoundCheck:
    """Strengthened bound with the symmetrized covariance term included."""
    mean_a, mean_b, sd_a, sd_b, ab = _pair_stats(a, b, state)
    covariance = ab.real - mean_a * mean_b   # Re<AB> = <AB+BA>/2
    rhs = math.hypot(covariance, ab.imag)
    return BoundCheck.of(sd_a * sd_b, rhs)


@dataclass(frozen=True)
class MTSample:
    """Mandelstam-Tamm timescale of one observable at one time.

    delta_t and product are math.inf when the rate falls at or below the
    scale-aware threshold (the observable is momentarily stationary).
    """

    t: float
    delta_a: float
    rate: float
    delta_t: float
    product: float


def _mt_context(observable, scenario: Scenario):
    a = require_hermitian(observable, "observable")
    if a.shape[0] != scenario.dim:
        raise ValueError(
            f"observable has dimension {a.shape[0]}, expected {scenario.dim}"
        )
    spec = eigendecompose(scenario.hamiltonian)
    energy_spread = qstat.stats(scenario.hamiltonian, scenario.initial_state).stddev
    if energy_spread <= ENERGY_SPREAD_MIN:
        raise ValueError(
            "Mandelstam-Tamm timescale is undefined for energy eigenstates "
            f"(energy spread {energy_spread:.3e})"
        )
    rate_eps = (
        RATE_EPS_FACTOR * spec.span * float(np.linalg.norm(a, 2)) / scenario.hbar
    )
    alpha0 = spec.eigenvectors.conj().T @ scenario.initial_state
    return a, spec, alpha0, energy_spread, rate_eps


def _sample_at(a, scenario, spec, alpha0, energy_spread, rate_eps, t: float) -> MTSample:
    phases = np.exp(-1j * spec.eigenvalues * (t / scenario.hbar))
    psi = spec.eigenvectors @ (alpha0 * phases)
    a_psi = a @ psi
    mean = float(np.real(np.vdot(psi, a_psi)))
    residual = a_psi - mean * psi
    delta_a = math.sqrt(float(np.real(np.vdot(residual, residual))))
    rate = abs(ehrenfest_rate(a, scenario.hamiltonian, psi, scenario.hbar))
    if rate <= rate_eps:
        return MTSample(t, delta_a, rate, math.inf, math.inf)
    delta_t = delta_a / rate
    return MTSample(t, delta_a, rate, delta_t, energy_spread * delta_t)


def mt_sample(observable, scenario: Scenario, t: float) -> MTSample:
    """Mandelstam-Tamm sample dT = dA / |d<A>/dt| with the exact rate."""
    if not (isinstance(t, (int, float)) and math.isfinite(t)):
        raise ValueError(f"t must be a finite real, got {t!r}")
    ctx = _mt_context(observable, scenario)
    return _sample_at(ctx[0], scenario, ctx[1], ctx[2], ctx[3], ctx[4], float(t))


def mt_series(observable, scenario: Scenario) -> list[MTSample]:
    """One MTSample per point of the scenario's time grid, in grid order."""
    a, spec, alpha0, energy_spread, rate_eps = _mt_context(observable, scenario)
    return [
        _sample_at(a, scenario, spec, alpha0, energy_spread, rate_eps, float(t))
        for t in scenario.time_grid.times()
    ]


def _probabilities(spec: SpectralDecomposition, amplitudes) -> np.ndarray:
    amps = np.asarray(amplitudes, dtype=np.complex128)
    if amps.ndim != 1 or amps.size != spec.dim:
        raise ValueError(
            f"amplitudes must match the decomposition dimension {spec.dim}"
        )
    probs = np.abs(amps) ** 2
    if abs(float(probs.sum()) - 1.0) > 1e-10:
        raise ValueError(
            f"amplitudes are not normalized: sum of squared moduli is {probs.sum()!r}"
        )
    return probs


def state_overlap(spec: SpectralDecomposition, amplitudes, t, hbar: float = 1.0):
    """Survival amplitude <psi(0)|psi(t)> = sum_k |a_k|^2 exp(-i E_k t / hbar).

    Scalar t gives a complex scalar; an array of times gives a complex array.
    """
    probs = _probabilities(spec, amplitudes)
    ts = np.asarray(t, dtype=np.float64)
    values = np.exp(-1j * np.outer(spec.eigenvalues, ts) / hbar)
    out = probs @ values.reshape(spec.dim, -1)
    return complex(out[0]) if ts.ndim == 0 else out.reshape(ts.shape)


@dataclass(frozen=True)
class OrthogonalizationResult:
    """Outcome of the earliest-orthogonal-time search.

    kind is "found" (tau_perp set) or "never_orthogonal" (min_overlap_bound
    set: the analytic floor below which the overlap modulus cannot drop).
    """

    kind: str
    tau_perp: float | None
    min_overlap_bound: float | None
    min_observed_overlap: float
    horizon: float

    @property
    def found(self) -> bool:
        return self.kind == "found"


class InconclusiveScanError(RuntimeError):
    """No orthogonal state found, but no analytic certificate excludes one."""

    def __init__(self, min_observed_overlap: float, horizon: float):
        super().__init__(
            "orthogonalization search is inconclusive: no overlap zero within "
            f"horizon {horizon:.6g} (smallest observed modulus "
            f"{min_observed_overlap:.6g}) and no analytic certificate applies"
        )
        self.min_observed_overlap = min_observed_overlap
        self.horizon = horizon


def _overlap_modulus_and_slope(probs, evals, hbar, t):
    """|o(t)| and d|o|^2/dt for the bisection refinement."""
    phases = np.exp(-1j * evals * (t / hbar))
    o = complex(np.dot(probs, phases))
    o_dot = complex(np.dot(probs, -1j * evals / hbar * phases))
    return abs(o), 2.0 * (o.conjugate() * o_dot).real


def _refine_minimum(probs, evals, hbar, lo, hi):
    """Bisect d|o|^2/dt over [lo, hi] down to the relative time tolerance."""
    _, slope_lo = _overlap_modulus_and_slope(probs, evals, hbar, lo)
    _, slope_hi = _overlap_modulus_and_slope(probs, evals, hbar, hi)
    if slope_lo > 0.0 or slope_hi < 0.0:
        # not a clean descent/ascent bracket; fall back to the midpoint
        mid = 0.5 * (lo + hi)
        return mid, _overlap_modulus_and_slope(probs, evals, hbar, mid)[0]
    tol = REFINE_REL_TOL * max(1.0, abs(hi))
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        _, slope = _overlap_modulus_and_slope(probs, evals, hbar, mid)
        if slope < 0.0:
            lo = mid
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    return mid, _overlap_modulus_and_slope(probs, evals, hbar, mid)[0]


def orthogonalization_time(
    spec: SpectralDecomposition,
    amplitudes,
    hbar: float = 1.0,
    tol_orth: float = DEFAULT_TOL_ORTH,
    horizon: float | None = None,
) -> OrthogonalizationResult:
    """Earliest time at which the evolved state is orthogonal to the start.

    A dominant amplitude (max |a_k|^2 > 1/2) certifies analytically that the
    overlap modulus never drops below 2 max|a_k|^2 - 1, so no search runs.
    Otherwise the overlap modulus is scanned on SCAN_POINTS points up to the
    horizon (default HORIZON_PERIODS slowest beat periods), each sampled local
    minimum is refined by bisection on the modulus-squared slope, and the
    earliest refined minimum at or below tol_orth is returned.

    Raises:
        InconclusiveScanError: nothing found and no certificate applies.
    """
    if not (0.0 < tol_orth < 0.1):
        raise ValueError(f"tol_orth must be in (0, 0.1), got {tol_orth!r}")
    probs = _probabilities(spec, amplitudes)
    evals = spec.eigenvalues

    span = spec.span
    gap_tol = 1e-12 * max(1.0, span)
    gaps = np.diff(evals)
    real_gaps = gaps[gaps > gap_tol]
    if real_gaps.size == 0:
        # fully degenerate spectrum: overlap modulus is identically 1
        return OrthogonalizationResult("never_orthogonal", None, 1.0, 1.0, 0.0)

    bound = 2.0 * float(probs.max()) - 1.0
    if bound > tol_orth:
        return OrthogonalizationResult("never_orthogonal", None, bound, 1.0, 0.0)

    if horizon is None:
        horizon = HORIZON_PERIODS * 2.0 * math.pi * hbar / float(real_gaps.min())
    if not (math.isfinite(horizon) and horizon > 0):
        raise ValueError(f"horizon must be positive and finite, got {horizon!r}")

    ts = np.linspace(0.0, horizon, SCAN_POINTS)
    moduli = np.abs(state_overlap(spec, amplitudes, ts, hbar))
    min_observed = float(moduli.min())

    interior = np.nonzero(
        (moduli[1:-1] <= moduli[:-2]) & (moduli[1:-1] <= moduli[2:])
    )[0] + 1
    for i in interior:
        t_star, modulus = _refine_minimum(probs, evals, hbar, ts[i - 1], ts[i + 1])
        min_observed = min(min_observed, modulus)
        if modulus <= tol_orth:
            return OrthogonalizationResult(
                "found", t_star, None, min_observed, float(horizon)
            )
    raise InconclusiveScanError(min_observed, float(horizon))


@dataclass(frozen=True)
class SpeedLimitBounds:
    """Lower bounds on the orthogonalization time.

    from_energy_spread: pi*hbar / (2 dH).
    from_mean_energy: pi*hbar / (2 <H'>) with the spectrum shifted so that
    E_min = 0 (the convention under which the bound is valid).
    from_mean_energy_unshifted: the raw pi*hbar / (2 <H>) with no shift;
    exposed because it fails for spectra whose mean energy is <= 0 (infinite
    flag when |<H>| < MEAN_ENERGY_MIN, signed and meaningless when negative).
    """

    from_energy_spread: float
    from_mean_energy: float
    from_mean_energy_unshifted: float


def _energy_moments(spec: SpectralDecomposition, probs: np.ndarray):
    mean = float(probs @ spec.eigenvalues)
    # shifted second moment: exact zero spread for eigenstates instead of
    # sqrt(eps)-sized cancellation residue, which would defeat the
    # infinite-bound threshold below
    spread = math.sqrt(float(probs @ (spec.eigenvalues - mean) ** 2))
    shifted_mean = mean - float(spec.eigenvalues[0])
    return mean, spread, shifted_mean


def ml_bounds(spec: SpectralDecomposition, amplitudes, hbar: float = 1.0) -> SpeedLimitBounds:
    """Margolus-Levitin style lower bounds on the orthogonalization time."""
    probs = _probabilities(spec, amplitudes)
    mean, spread, shifted_mean = _energy_moments(spec, probs)
    half_pi_hbar = 0.5 * math.pi * hbar
    from_spread = half_pi_hbar / spread if spread >= MEAN_ENERGY_MIN else math.inf
    from_mean = (
        half_pi_hbar / shifted_mean if shifted_mean >= MEAN_ENERGY_MIN else math.inf
    )
    raw = half_pi_hbar / mean if abs(mean) >= MEAN_ENERGY_MIN else math.inf
    return SpeedLimitBounds(from_spread, from_mean, raw)


def qsl_tau(spec: SpectralDecomposition, amplitudes, hbar: float = 1.0) -> float:
    """Unified quantum speed limit h / (4 min(dH, <H'>)), E_min = 0 shift.

    Infinite for energy eigenstates (either moment vanishes), which never
    reach an orthogonal state under closed evolution.
    """
    probs = _probabilities(spec, amplitudes)
    _, spread, shifted_mean = _energy_moments(spec, probs)
    denom = min(spread, shifted_mean)
    if denom < MEAN_ENERGY_MIN:
        return math.inf
    # h = 2*pi*hbar, so h/(4x) = pi*hbar/(2x)
    return 0.5 * math.pi * hbar / denom
