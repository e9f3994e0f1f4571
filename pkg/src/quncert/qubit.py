"""Two-level test bench: precession under H = (hbar*omega/2) sigma_z.

Carries the figure presets, closed-form reference expressions for the
transverse spin observable, and the tick/tock clock extractor used for the
Einstein-Planck clock check h*nu = delta_E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Scenario, Trajectory, default_time_grid
from .hilbert import as_state

SIGMA_X = np.asarray([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.asarray([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.asarray([[1, 0], [0, -1]], dtype=np.complex128)

# series whose full range is below this carry no usable clock signal
CLOCK_RANGE_MIN = 1e-9
MIN_EXTREMA = 3


def pauli(axis: str) -> np.ndarray:
    """Pauli matrix for axis 'x', 'y' or 'z' (fresh copy)."""
    try:
        return {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}[axis].copy()
    except KeyError:
        raise ValueError(f"axis must be 'x', 'y' or 'z', got {axis!r}") from None


def spin_projectors(axis: str) -> tuple[np.ndarray, np.ndarray]:
    """(P_plus, P_minus) projectors onto the +1/-1 eigenvectors of pauli(axis)."""
    s = pauli(axis)
    eye = np.eye(2, dtype=np.complex128)
    return 0.5 * (eye + s), 0.5 * (eye - s)


@dataclass(frozen=True)
class QubitPreset:
    """Initial state alpha1 |up_z> + alpha2 |down_z> precessing at omega.

    alpha1 rides the upper level (+hbar*omega/2), alpha2 the lower one.
    """

    omega: float
    alpha1: complex
    alpha2: complex
    hbar: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be positive and finite, got {self.omega!r}")
        if not (math.isfinite(self.hbar) and self.hbar > 0):
            raise ValueError(f"hbar must be positive and finite, got {self.hbar!r}")
        as_state([self.alpha1, self.alpha2], "preset amplitudes", norm_tol=1e-12)

    @property
    def coherence(self) -> float:
        return 2.0 * abs(self.alpha1) * abs(self.alpha2)

    def state(self) -> np.ndarray:
        return np.asarray([self.alpha1, self.alpha2], dtype=np.complex128)

    def hamiltonian(self) -> np.ndarray:
        return 0.5 * self.hbar * self.omega * SIGMA_Z


def _preset(p1: float, p2: float) -> QubitPreset:
    return QubitPreset(omega=1.0, alpha1=math.sqrt(p1), alpha2=math.sqrt(p2))


# Figure presets: probability weights (|alpha1|^2, |alpha2|^2) on the upper
# and lower level.  Coherences: fig1 0, 0.745, 0.943, 1; fig2 0, 0.312,
# 0.745, 1; fig3 0.436 (A,B) and 0.995 (C,D).
FIGURE_PRESETS: dict[str, QubitPreset] = {
    "fig1A": _preset(1.0, 0.0),
    "fig1B": _preset(5 / 6, 1 / 6),
    "fig1C": _preset(2 / 3, 1 / 3),
    "fig1D": _preset(1 / 2, 1 / 2),
    "fig2A": _preset(1.0, 0.0),
    "fig2B": _preset(39 / 40, 1 / 40),
    "fig2C": _preset(5 / 6, 1 / 6),
    "fig2D": _preset(1 / 2, 1 / 2),
    "fig3AB": _preset(19 / 20, 1 / 20),
    "fig3CD": _preset(11 / 20, 9 / 20),
}


def default_clock_observables() -> dict[str, np.ndarray]:
    """The transverse clock observable and its two projectors."""
    plus, minus = spin_projectors("x")
    return {"sx": pauli("x"), "proj_up_x": plus, "proj_down_x": minus}


def qubit_scenario(
    preset: QubitPreset,
    observables: dict | None = None,
    steps: int = 1000,
) -> Scenario:
    """Scenario for a preset: two precession periods on a uniform grid."""
    h = preset.hamiltonian()
    grid = default_time_grid(h, hbar=preset.hbar, steps=steps)
    return Scenario(
        hbar=preset.hbar,
        hamiltonian=h,
        initial_state=preset.state(),
        time_grid=grid,
        observables=(
            default_clock_observables() if observables is None else observables
        ),
    )


def _interference(preset: QubitPreset):
    cross = preset.alpha1 * np.conj(preset.alpha2)
    return float(cross.real), float(cross.imag)


def analytic_sx_mean(preset: QubitPreset, t):
    """<sigma_x>(t) = 2 [Re(a1 a2*) cos wt + Im(a1 a2*) sin wt]."""
    re, im = _interference(preset)
    wt = preset.omega * np.asarray(t, dtype=np.float64)
    return 2.0 * (re * np.cos(wt) + im * np.sin(wt))


def analytic_sx_rate(preset: QubitPreset, t):
    """d<sigma_x>/dt = -2 w [Re(a1 a2*) sin wt - Im(a1 a2*) cos wt]."""
    re, im = _interference(preset)
    wt = preset.omega * np.asarray(t, dtype=np.float64)
    return -2.0 * preset.omega * (re * np.sin(wt) - im * np.cos(wt))


def analytic_sx_std(preset: QubitPreset, t):
    """Delta sigma_x(t) = |a1^2 exp(-i wt) - a2^2 exp(+i wt)|."""
    wt = preset.omega * np.asarray(t, dtype=np.float64)
    a1sq = preset.alpha1 * preset.alpha1
    a2sq = preset.alpha2 * preset.alpha2
    return np.abs(a1sq * np.exp(-1j * wt) - a2sq * np.exp(1j * wt))


def analytic_energy_spread(preset: QubitPreset) -> float:
    """Delta H = hbar w |a1||a2| (constant in time)."""
    return preset.hbar * preset.omega * abs(preset.alpha1) * abs(preset.alpha2)


def analytic_mt_delta_t(preset: QubitPreset, t):
    """Closed-form Mandelstam-Tamm timescale Delta sigma_x / |d<sigma_x>/dt|.

    Samples where the rate falls at or below the scale-aware threshold carry
    math.inf (the clock pauses at turning points of <sigma_x>).

    Raises:
        ValueError: coherence is zero, so the clock observable is static.
    """
    if preset.coherence == 0.0:
        raise ValueError("clock observable static: preset has zero coherence")
    rate_eps = 1e-12 * preset.omega  # span * ||sigma_x|| / hbar = w
    spread = analytic_sx_std(preset, t)
    rate = np.abs(analytic_sx_rate(preset, t))
    scalar = np.ndim(t) == 0
    spread = np.atleast_1d(spread)
    rate = np.atleast_1d(rate)
    out = np.full(spread.shape, math.inf)
    live = rate > rate_eps
    out[live] = spread[live] / rate[live]
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class TickTockReport:
    """Alternating extrema of a clock observable and the implied clock rate."""

    extrema: list          # [(time, "tick" | "tock"), ...] tick = max, tock = min
    delta_t: float         # mean spacing between consecutive extrema
    delta_e: float         # E_max - E_min of the driving Hamiltonian
    product: float         # delta_e * delta_t, compared against h/2


def tick_tock(trajectory: Trajectory, observable_name: str) -> TickTockReport:
    """Locate alternating extrema of a mean series and form the clock product.

    Extrema are detected as sign changes of the first difference and then
    refined with a three-point parabola, which is accurate to O(step^3) for
    sinusoidal signals. Exact-zero differences (grid points symmetric about
    a vertex) are folded into the bracketed plateau rather than dropped.

    Raises:
        ValueError: series range below CLOCK_RANGE_MIN ("no clock signal"),
            unknown observable, or fewer than MIN_EXTREMA extrema.
    """
    if observable_name not in trajectory.observables:
        raise ValueError(f"trajectory has no observable {observable_name!r}")
    y = trajectory.observables[observable_name].mean
    ts = trajectory.times
    if float(y.max() - y.min()) <= CLOCK_RANGE_MIN:
        raise ValueError("no clock signal: observable series is constant")

    step = ts[1] - ts[0]
    diffs = np.diff(y)
    signs = np.sign(diffs)
    extrema: list[tuple[float, str]] = []
    prev = -1  # index of the last nonzero first difference
    for i, s in enumerate(signs):
        if s == 0.0:
            continue
        if prev >= 0 and signs[prev] * s < 0:
            # the vertex sits between the opposing slopes; pick the extreme
            # sample of the (usually single-point) plateau they bracket
            seg = y[prev + 1 : i + 1]
            j = prev + 1 + (
                int(np.argmax(seg)) if signs[prev] > 0 else int(np.argmin(seg))
            )
            denom = y[j - 1] - 2.0 * y[j] + y[j + 1]
            offset = 0.0 if denom == 0.0 else 0.5 * step * (y[j - 1] - y[j + 1]) / denom
            kind = "tick" if signs[prev] > 0 else "tock"
            extrema.append((float(ts[j] + offset), kind))
        prev = i
    if len(extrema) < MIN_EXTREMA:
        raise ValueError(
            f"need at least {MIN_EXTREMA} extrema to estimate the clock rate, "
            f"found {len(extrema)}"
        )
    for (_, a), (_, b) in zip(extrema, extrema[1:]):
        if a == b:
            raise ValueError("extrema do not alternate; series is not a clean clock")
    times = np.asarray([t for t, _ in extrema])
    delta_t = float(np.mean(np.diff(times)))
    delta_e = trajectory.energy_span
    return TickTockReport(extrema, delta_t, delta_e, delta_e * delta_t)
