"""Statistics of Hermitian observables on pure states.

Expectation values, variances and standard deviations, plus the l1-type
coherence of a state over an energy eigenbasis and its predictability
complement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import SpectralDecomposition, as_state, require_hermitian

# Sesquilinear forms of Hermitian operators are real up to rounding; anything
# larger than this residue signals a non-Hermitian input.
MEAN_IMAG_TOL = 1e-10
# <A^2> - <A>^2 may round slightly negative; clamp down to zero within this.
VARIANCE_CLAMP_FLOOR = -1e-12
STATE_NORM_TOL = 1e-9


@dataclass(frozen=True)
class StatSummary:
    """Mean, variance and standard deviation of one observable on one state."""

    mean: float
    variance: float
    stddev: float


@dataclass(frozen=True)
class CoherenceSummary:
    """l1 coherence over a basis, its predictability complement, and the dim."""

    coherence: float
    predictability: float
    basis_dim: int


def _real_part(value: complex, what: str) -> float:
    if abs(value.imag) >= MEAN_IMAG_TOL:
        raise ValueError(
            f"{what} has imaginary residue {value.imag:.3e}; "
            "inputs are not Hermitian"
        )
    return float(value.real)


def clamped_variance(raw: float) -> float:
    """Clamp tiny negative rounding residue to zero; reject anything worse."""
    if raw < VARIANCE_CLAMP_FLOOR:
        raise ValueError(f"variance {raw:.3e} is below the rounding floor")
    return raw if raw > 0.0 else 0.0


def expectation(observable, state) -> float:
    """<state|observable|state> with the imaginary residue discarded."""
    a = require_hermitian(observable, "observable")
    psi = as_state(state, norm_tol=STATE_NORM_TOL)
    if a.shape[0] != psi.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {psi.shape[0]}")
    return _real_part(complex(np.vdot(psi, a @ psi)), "expectation value")


def stats(observable, state) -> StatSummary:
    """Mean, variance <A^2> - <A>^2, and stddev of an observable on a state.

    The variance is evaluated in the shifted form ||(A - <A>) psi||^2, which
    is the same quantity but stays nonnegative and keeps full accuracy when
    the state is close to an eigenstate (the raw difference of second and
    squared first moments cancels catastrophically there).
    """
    a = require_hermitian(observable, "observable")
    psi = as_state(state, norm_tol=STATE_NORM_TOL)
    if a.shape[0] != psi.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {psi.shape[0]}")
    a_psi = a @ psi
    mean = _real_part(complex(np.vdot(psi, a_psi)), "expectation value")
    residual = a_psi - mean * psi
    variance = clamped_variance(float(np.real(np.vdot(residual, residual))))
    return StatSummary(mean, variance, math.sqrt(variance))


def coherence_from_amplitudes(amplitudes) -> CoherenceSummary:
    """Coherence of a normalized amplitude vector over its own basis.

    C = (1/(n-1)) * sum_{i != j} |a_i| |a_j|  (ordered pairs, so the qubit
    case reduces to 2|a_1||a_2|), and predictability P = sqrt(1 - C^2).
    """
    amps = np.asarray(amplitudes, dtype=np.complex128)
    if amps.ndim != 1 or amps.size < 2:
        raise ValueError("coherence needs an amplitude vector of dimension >= 2")
    mods = np.abs(amps)
    total_sq = float(mods.sum()) ** 2
    prob_sum = float((mods**2).sum())
    if abs(prob_sum - 1.0) > STATE_NORM_TOL:
        raise ValueError(
            f"amplitudes are not normalized: sum of squared moduli is {prob_sum!r}"
        )
    n = amps.size
    coherence = (total_sq - prob_sum) / (n - 1)
    if coherence > 1.0 + 1e-12:
        raise ValueError(f"coherence {coherence!r} exceeds 1 beyond rounding")
    coherence = max(coherence, 0.0)
    if n == 2:
        # 1 - C^2 factors exactly as (p_1 - p_2)^2 for two levels, which
        # sidesteps the steep sqrt near C = 1 where cancellation in 1 - C^2
        # would otherwise blow rounding noise up to ~1e-8.
        predictability = abs(float(mods[0] ** 2) - float(mods[1] ** 2))
    else:
        pred_sq = 1.0 - coherence * coherence
        predictability = math.sqrt(pred_sq) if pred_sq > 0.0 else 0.0
    return CoherenceSummary(coherence, predictability, n)


def l1_coherence(state, basis: SpectralDecomposition) -> CoherenceSummary:
    """Coherence of a state over the eigenbasis of a spectral decomposition."""
    psi = as_state(state, norm_tol=STATE_NORM_TOL)
    if basis.dim != psi.shape[0]:
        raise ValueError(f"dimension mismatch: {basis.dim} vs {psi.shape[0]}")
    amps = basis.eigenvectors.conj().T @ psi
    return coherence_from_amplitudes(amps)
