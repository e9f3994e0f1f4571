"""Command line interface.

Subcommands:
    evolve <scenario.json> [-o out.csv]     sample a trajectory to CSV
    figure <fig1|fig2|fig3> [-d outdir]     emit per-panel CSV data
    verify <suite> [--scenario path] [--seed N] [--report out]

Exit codes: 0 all checks pass, 1 check failure, 2 input error,
3 inconclusive (orthogonalization search found nothing either way).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__, dynamics, qubit, uncertainty
from .hilbert import eigendecompose

DEFAULT_SEED = 42
SEED_ENV_VAR = "QUNCERT_SEED"
OFFSET_VALUES = (-5.0, 0.5, 7.3)
VERIFY_SUITES = (
    "conservation",
    "offset",
    "ehrenfest",
    "robertson",
    "schrodinger",
    "mt",
    "ml",
    "qsl",
    "all",
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3


class ScenarioFormatError(ValueError):
    """Scenario file rejected; the message names the offending entry."""


# ---------------------------------------------------------------- scenario io

def _as_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioFormatError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ScenarioFormatError(f"{where}: value must be finite, got {value!r}")
    return float(value)


def _as_complex(value, where: str) -> complex:
    if not (isinstance(value, list) and len(value) == 2):
        raise ScenarioFormatError(
            f"{where}: expected a [re, im] pair, got {value!r}"
        )
    return complex(_as_number(value[0], where), _as_number(value[1], where))


def _as_complex_matrix(value, where: str) -> np.ndarray:
    if not (isinstance(value, list) and value):
        raise ScenarioFormatError(f"{where}: expected a nonempty matrix")
    n = len(value)
    out = np.zeros((n, n), dtype=np.complex128)
    for i, row in enumerate(value):
        if not (isinstance(row, list) and len(row) == n):
            raise ScenarioFormatError(
                f"{where}[{i}]: expected a row of {n} entries"
            )
        for j, entry in enumerate(row):
            out[i, j] = _as_complex(entry, f"{where}[{i}][{j}]")
    return out


def _as_complex_vector(value, where: str) -> np.ndarray:
    if not (isinstance(value, list) and value):
        raise ScenarioFormatError(f"{where}: expected a nonempty vector")
    return np.asarray(
        [_as_complex(entry, f"{where}[{i}]") for i, entry in enumerate(value)],
        dtype=np.complex128,
    )


def load_scenario(path: str) -> dynamics.Scenario:
    """Parse and validate a scenario file (JSON with [re, im] complex pairs)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ScenarioFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(
            f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc

    if not isinstance(raw, dict):
        raise ScenarioFormatError(f"{path}: top level must be an object")
    for key in ("hbar", "hamiltonian", "initial_state", "time"):
        if key not in raw:
            raise ScenarioFormatError(f"{path}: missing required key {key!r}")
    unknown = set(raw) - {"hbar", "hamiltonian", "initial_state", "time", "observables"}
    if unknown:
        raise ScenarioFormatError(f"{path}: unknown keys {sorted(unknown)!r}")

    hbar = _as_number(raw["hbar"], "hbar")
    hamiltonian = _as_complex_matrix(raw["hamiltonian"], "hamiltonian")
    state = _as_complex_vector(raw["initial_state"], "initial_state")

    time = raw["time"]
    if not isinstance(time, dict):
        raise ScenarioFormatError("time: expected an object {start, stop, steps}")
    for key in ("start", "stop", "steps"):
        if key not in time:
            raise ScenarioFormatError(f"time: missing required key {key!r}")
    steps = time["steps"]
    if isinstance(steps, bool) or not isinstance(steps, int):
        raise ScenarioFormatError(f"time.steps: expected an integer, got {steps!r}")

    observables = {}
    raw_obs = raw.get("observables", {})
    if not isinstance(raw_obs, dict):
        raise ScenarioFormatError("observables: expected an object of matrices")
    for name, matrix in raw_obs.items():
        observables[name] = _as_complex_matrix(matrix, f"observables[{name!r}]")

    try:
        grid = dynamics.TimeGrid(
            _as_number(time["start"], "time.start"),
            _as_number(time["stop"], "time.stop"),
            steps,
        )
        return dynamics.Scenario(
            hbar=hbar,
            hamiltonian=hamiltonian,
            initial_state=state,
            time_grid=grid,
            observables=observables,
        )
    except ValueError as exc:
        raise ScenarioFormatError(f"{path}: {exc}") from exc


# ------------------------------------------------------------------ csv output

def format_value(x: float) -> str:
    """17 significant digits, scientific; infinities as the literal 'inf'."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.16e}"


def write_trajectory_csv(trajectory: dynamics.Trajectory, fh) -> None:
    names = list(trajectory.observables)
    header = ["t"]
    for name in names:
        header += [f"{name}_mean", f"{name}_std"]
    header += ["energy_mean", "energy_std", "coherence", "predictability"]
    fh.write(",".join(header) + "\n")
    for k, t in enumerate(trajectory.times):
        row = [format_value(float(t))]
        for name in names:
            series = trajectory.observables[name]
            row += [
                format_value(float(series.mean[k])),
                format_value(float(series.stddev[k])),
            ]
        row += [
            format_value(float(trajectory.energy.mean[k])),
            format_value(float(trajectory.energy.stddev[k])),
            format_value(float(trajectory.coherence[k])),
            format_value(float(trajectory.predictability[k])),
        ]
        fh.write(",".join(row) + "\n")


# ----------------------------------------------------------------- randomness

def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Gaussian Hermitian matrix with entries of order one."""
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (m + m.conj().T) / math.sqrt(dim)


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_scenario(
    rng: np.random.Generator, dim: int, steps: int = 1000, n_observables: int = 2
) -> dynamics.Scenario:
    """Seeded random Hamiltonian/state scenario on the default two-period grid."""
    h = random_hermitian(rng, dim)
    grid = dynamics.default_time_grid(h, hbar=1.0, steps=steps)
    observables = {
        f"obs{k}": random_hermitian(rng, dim) for k in range(n_observables)
    }
    return dynamics.Scenario(
        hbar=1.0,
        hamiltonian=h,
        initial_state=random_state(rng, dim),
        time_grid=grid,
        observables=observables,
    )


# -------------------------------------------------------------- verify checks

@dataclass(frozen=True)
class Check:
    """One verified inequality; pass means slack = lhs - rhs >= 0."""

    name: str
    lhs: float
    rhs: float
    slack: float
    verdict: str  # "pass" | "fail" | "inconclusive"


def check_min(name: str, value: float, floor: float) -> Check:
    """Pass when value >= floor."""
    slack = value - floor
    return Check(name, value, floor, slack, "pass" if slack >= 0 else "fail")


def check_max(name: str, value: float, ceiling: float) -> Check:
    """Pass when value <= ceiling."""
    slack = ceiling - value
    return Check(name, ceiling, value, slack, "pass" if slack >= 0 else "fail")


def check_bool(name: str, ok: bool) -> Check:
    lhs = 1.0 if ok else 0.0
    return Check(name, lhs, 1.0, lhs - 1.0, "pass" if ok else "fail")


def check_inconclusive(name: str, min_observed: float) -> Check:
    return Check(name, min_observed, 0.0, 0.0, "inconclusive")


def _preset_scenarios(names) -> dict[str, dynamics.Scenario]:
    return {
        name: qubit.qubit_scenario(qubit.FIGURE_PRESETS[name]) for name in names
    }


def _suite_conservation(scenario, rng) -> list[Check]:
    checks = []
    if scenario is not None:
        report = dynamics.check_conservation(dynamics.evolve(scenario))
        checks.append(
            check_max("conservation.scenario.max_drift", report.max_drift, report.tolerance)
        )
        return checks
    for name, s in _preset_scenarios(qubit.FIGURE_PRESETS).items():
        report = dynamics.check_conservation(dynamics.evolve(s))
        checks.append(
            check_max(f"conservation.{name}.max_drift", report.max_drift, report.tolerance)
        )
    for k in range(10):
        dim = 2 + k % 5
        s = random_scenario(rng, dim)
        report = dynamics.check_conservation(dynamics.evolve(s))
        checks.append(
            check_max(
                f"conservation.random{k}.dim{dim}.max_drift",
                report.max_drift,
                report.tolerance,
            )
        )
    return checks


def _suite_offset(scenario, rng) -> list[Check]:
    targets = (
        {"scenario": scenario}
        if scenario is not None
        else _preset_scenarios(["fig2A", "fig2B", "fig2C", "fig2D"])
    )
    checks = []
    for name, s in targets.items():
        for offset in OFFSET_VALUES:
            report = dynamics.offset_invariance_check(s, offset)
            worst = max(
                report.max_observable_diff,
                report.max_phase_defect,
                report.max_energy_shift_defect,
            )
            checks.append(
                check_max(f"offset.{name}.E0={offset}", worst, report.tolerance)
            )
    return checks


def _residual_ratio(s, observable, t, fd_step) -> float:
    coarse = dynamics.ehrenfest_residual(observable, s, t, fd_step)
    fine = dynamics.ehrenfest_residual(observable, s, t, fd_step / 2.0)
    return coarse / fine if fine > 0 else math.inf


def _suite_ehrenfest(scenario, rng) -> list[Check]:
    checks = []
    if scenario is None:
        s = qubit.qubit_scenario(qubit.FIGURE_PRESETS["fig2D"])
        sx = s.observables["sx"]
        probes = (0.4, 1.3, 2.9, 4.6)
        worst = max(dynamics.ehrenfest_residual(sx, s, t, 1e-4) for t in probes)
        checks.append(check_max("ehrenfest.fig2D.sx.residual@1e-4", worst, 1e-8))
        ratio = _residual_ratio(s, sx, 1.3, 1e-3)
        checks.append(check_min("ehrenfest.fig2D.sx.halving_ratio_low", ratio, 3.5))
        checks.append(check_max("ehrenfest.fig2D.sx.halving_ratio_high", ratio, 4.5))
        static = max(
            dynamics.ehrenfest_residual(s.hamiltonian, s, 1.3, 1e-4),
            dynamics.ehrenfest_residual(qubit.pauli("z"), s, 1.3, 1e-4),
        )
        checks.append(check_max("ehrenfest.fig2D.static_observables", static, 1e-10))
        return checks

    spec = eigendecompose(scenario.hamiltonian)
    fd = dynamics.default_fd_step(spec, scenario.hbar)
    grid = scenario.time_grid
    span = grid.stop - grid.start
    probes = [grid.start + f * span for f in (0.2, 0.5, 0.8)]
    for name, matrix in scenario.observables.items():
        scale = max(1.0, spec.span / scenario.hbar * float(np.linalg.norm(matrix)))
        worst = max(
            dynamics.ehrenfest_residual(matrix, scenario, t, fd) for t in probes
        )
        checks.append(check_max(f"ehrenfest.{name}.residual@default", worst, 1e-6 * scale))
    if scenario.observables:
        name, matrix = next(iter(scenario.observables.items()))
        period = 2.0 * math.pi * scenario.hbar / spec.span if spec.span > 0 else 1.0
        coarse_step = 1e-3 * period
        t_star = max(
            probes,
            key=lambda t: dynamics.ehrenfest_residual(matrix, scenario, t, coarse_step),
        )
        ratio = _residual_ratio(scenario, matrix, t_star, coarse_step)
        checks.append(check_min(f"ehrenfest.{name}.halving_ratio_low", ratio, 3.5))
        checks.append(check_max(f"ehrenfest.{name}.halving_ratio_high", ratio, 4.5))
    return checks


def _uncertainty_fuzz(rng, kind: str) -> list[Check]:
    checks = []
    for dim in range(2, 7):
        min_slack = math.inf
        min_gap = math.inf
        for _ in range(1000):
            a = random_hermitian(rng, dim)
            b = random_hermitian(rng, dim)
            psi = random_state(rng, dim)
            if kind == "robertson":
                result = uncertainty.robertson_check(a, b, psi)
                min_slack = min(min_slack, result.slack)
            else:
                strong = uncertainty.schrodinger_check(a, b, psi)
                weak = uncertainty.robertson_check(a, b, psi)
                min_slack = min(min_slack, strong.slack)
                min_gap = min(min_gap, strong.rhs - weak.rhs)
        checks.append(
            check_min(f"{kind}.dim{dim}.min_slack", min_slack, -uncertainty.BOUND_SLACK_TOL)
        )
        if kind == "schrodinger":
            checks.append(
                check_min(f"{kind}.dim{dim}.rhs_dominates_robertson", min_gap, 0.0)
            )
    return checks


def _scenario_pairs(scenario, rng, kind) -> list[Check]:
    """Bound checks on a user scenario: its own observables vs H and each other."""
    checks = []
    items = list(scenario.observables.items()) + [("energy", scenario.hamiltonian)]
    fn = (
        uncertainty.robertson_check
        if kind == "robertson"
        else uncertainty.schrodinger_check
    )
    for i, (name_a, a) in enumerate(items):
        for name_b, b in items[i:]:
            result = fn(a, b, scenario.initial_state)
            checks.append(
                check_min(
                    f"{kind}.{name_a}x{name_b}.slack",
                    result.slack,
                    -uncertainty.BOUND_SLACK_TOL,
                )
            )
    return checks


def _suite_robertson(scenario, rng) -> list[Check]:
    if scenario is not None:
        return _scenario_pairs(scenario, rng, "robertson")
    return _uncertainty_fuzz(rng, "robertson")


def _suite_schrodinger(scenario, rng) -> list[Check]:
    if scenario is not None:
        return _scenario_pairs(scenario, rng, "schrodinger")
    return _uncertainty_fuzz(rng, "schrodinger")


def _extremum_distance(preset: qubit.QubitPreset, t: float) -> float:
    """Distance from t to the nearest turning point of <sigma_x>."""
    cross = preset.alpha1 * np.conj(preset.alpha2)
    phi = math.atan2(cross.imag, cross.real)
    frac = ((t * preset.omega - phi) / math.pi) % 1.0
    return min(frac, 1.0 - frac) * math.pi / preset.omega


def _mt_checks_for_preset(name: str, preset: qubit.QubitPreset) -> list[Check]:
    s = qubit.qubit_scenario(preset)
    samples = uncertainty.mt_series(s.observables["sx"], s)
    grid_step = s.time_grid.step
    half_hbar = 0.5 * preset.hbar
    finite = [smp for smp in samples if math.isfinite(smp.delta_t)]
    flagged = [smp for smp in samples if not math.isfinite(smp.delta_t)]
    checks = [check_bool(f"mt.{name}.has_finite_samples", bool(finite))]
    min_product = min((smp.product for smp in finite), default=math.inf)
    checks.append(
        check_min(f"mt.{name}.min_product", min_product, half_hbar - 1e-10)
    )
    worst_flag = max(
        (_extremum_distance(preset, smp.t) for smp in flagged), default=0.0
    )
    checks.append(
        check_max(f"mt.{name}.flags_at_extrema", worst_flag, grid_step)
    )
    if abs(preset.coherence - 1.0) < 1e-12:
        inv_omega = 1.0 / preset.omega
        worst_dt = max(abs(smp.delta_t - inv_omega) for smp in finite)
        worst_prod = max(abs(smp.product - half_hbar) for smp in finite)
        checks.append(check_max(f"mt.{name}.delta_t_is_1/omega", worst_dt, 1e-9))
        checks.append(check_max(f"mt.{name}.product_is_hbar/2", worst_prod, 1e-9))
    return checks


def _suite_mt(scenario, rng) -> list[Check]:
    if scenario is None:
        checks = []
        for name in ("fig2D", "fig3AB", "fig3CD"):
            checks += _mt_checks_for_preset(name, qubit.FIGURE_PRESETS[name])
        return checks
    checks = []
    half_hbar = 0.5 * scenario.hbar
    for name, matrix in scenario.observables.items():
        samples = uncertainty.mt_series(matrix, scenario)
        finite = [smp.product for smp in samples if math.isfinite(smp.product)]
        value = min(finite) if finite else math.inf
        checks.append(
            check_min(f"mt.{name}.min_product", value, half_hbar - 1e-10)
        )
    return checks


def _ml_certificate_cases() -> dict[str, qubit.QubitPreset]:
    # strictly dominant amplitude; the balanced presets sit at 1/2 + rounding
    cases = {
        name: preset
        for name, preset in qubit.FIGURE_PRESETS.items()
        if max(abs(preset.alpha1), abs(preset.alpha2)) ** 2 > 0.5 + 1e-12
    }
    cases["dominant95"] = qubit.QubitPreset(
        omega=1.0, alpha1=math.sqrt(0.95), alpha2=math.sqrt(0.05)
    )
    return cases


def _suite_ml(scenario, rng) -> list[Check]:
    checks = []
    if scenario is None:
        preset = qubit.FIGURE_PRESETS["fig2D"]
        s = qubit.qubit_scenario(preset)
        spec = eigendecompose(s.hamiltonian)
        amps = dynamics.energy_amplitudes(s.initial_state, spec)
        result = uncertainty.orthogonalization_time(spec, amps, s.hbar)
        bounds = uncertainty.ml_bounds(spec, amps, s.hbar)
        tau_expect = math.pi / preset.omega
        checks.append(check_bool("ml.fig2D.found", result.found))
        checks.append(
            check_max("ml.fig2D.tau_perp_is_pi/omega", abs(result.tau_perp - tau_expect), 1e-9)
        )
        checks.append(
            check_max(
                "ml.fig2D.spread_bound_equality",
                abs(result.tau_perp - bounds.from_energy_spread),
                1e-9,
            )
        )
        checks.append(
            check_min(
                "ml.fig2D.tau_above_mean_bound",
                result.tau_perp - bounds.from_mean_energy,
                -1e-9,
            )
        )
        checks.append(
            check_bool(
                "ml.fig2D.unshifted_mean_bound_infinite",
                math.isinf(bounds.from_mean_energy_unshifted),
            )
        )
        for name, p in _ml_certificate_cases().items():
            spec_p = eigendecompose(p.hamiltonian())
            amps_p = dynamics.energy_amplitudes(p.state(), spec_p)
            res = uncertainty.orthogonalization_time(spec_p, amps_p, p.hbar)
            expected = 2.0 * max(abs(p.alpha1), abs(p.alpha2)) ** 2 - 1.0
            ok = (not res.found) and res.min_overlap_bound is not None
            checks.append(check_bool(f"ml.{name}.never_orthogonal", ok))
            if ok:
                checks.append(
                    check_max(
                        f"ml.{name}.certificate_bound",
                        abs(res.min_overlap_bound - expected),
                        1e-12,
                    )
                )
        return checks

    spec = eigendecompose(scenario.hamiltonian)
    amps = dynamics.energy_amplitudes(scenario.initial_state, spec)
    bounds = uncertainty.ml_bounds(spec, amps, scenario.hbar)
    try:
        result = uncertainty.orthogonalization_time(spec, amps, scenario.hbar)
    except uncertainty.InconclusiveScanError as exc:
        checks.append(
            check_inconclusive("ml.scenario.search", exc.min_observed_overlap)
        )
        return checks
    if result.found:
        overlap = abs(
            uncertainty.state_overlap(spec, amps, result.tau_perp, scenario.hbar)
        )
        checks.append(
            check_max("ml.scenario.overlap_at_tau", overlap, uncertainty.DEFAULT_TOL_ORTH)
        )
        checks.append(
            check_min(
                "ml.scenario.tau_above_spread_bound",
                result.tau_perp - bounds.from_energy_spread,
                -1e-9,
            )
        )
        checks.append(
            check_min(
                "ml.scenario.tau_above_mean_bound",
                result.tau_perp - bounds.from_mean_energy,
                -1e-9,
            )
        )
    else:
        checks.append(
            check_min("ml.scenario.certificate_positive", result.min_overlap_bound, 0.0)
        )
    return checks


def _suite_qsl(scenario, rng) -> list[Check]:
    checks = []
    if scenario is None:
        for name, preset in qubit.FIGURE_PRESETS.items():
            if preset.coherence == 0.0:
                continue
            spec = eigendecompose(preset.hamiltonian())
            amps = dynamics.energy_amplitudes(preset.state(), spec)
            tau = uncertainty.qsl_tau(spec, amps, preset.hbar)
            bounds = uncertainty.ml_bounds(spec, amps, preset.hbar)
            checks.append(check_bool(f"qsl.{name}.finite", math.isfinite(tau)))
            expected = max(bounds.from_energy_spread, bounds.from_mean_energy)
            checks.append(
                check_max(f"qsl.{name}.equals_max_bound", abs(tau - expected), 1e-12)
            )
        preset = qubit.FIGURE_PRESETS["fig2D"]
        spec = eigendecompose(preset.hamiltonian())
        amps = dynamics.energy_amplitudes(preset.state(), spec)
        tau = uncertainty.qsl_tau(spec, amps, preset.hbar)
        result = uncertainty.orthogonalization_time(spec, amps, preset.hbar)
        checks.append(
            check_max("qsl.fig2D.tau_is_pi/omega", abs(tau - math.pi / preset.omega), 1e-9)
        )
        checks.append(
            check_max("qsl.fig2D.below_tau_perp", tau, result.tau_perp + 1e-9)
        )
        return checks

    spec = eigendecompose(scenario.hamiltonian)
    amps = dynamics.energy_amplitudes(scenario.initial_state, spec)
    tau = uncertainty.qsl_tau(spec, amps, scenario.hbar)
    bounds = uncertainty.ml_bounds(spec, amps, scenario.hbar)
    expected = max(bounds.from_energy_spread, bounds.from_mean_energy)
    if math.isinf(tau):
        checks.append(check_bool("qsl.scenario.infinite_for_eigenstate", math.isinf(expected)))
        return checks
    checks.append(check_max("qsl.scenario.equals_max_bound", abs(tau - expected), 1e-12))
    try:
        result = uncertainty.orthogonalization_time(spec, amps, scenario.hbar)
    except uncertainty.InconclusiveScanError as exc:
        checks.append(
            check_inconclusive("qsl.scenario.tau_perp_search", exc.min_observed_overlap)
        )
        return checks
    if result.found:
        checks.append(
            check_max("qsl.scenario.below_tau_perp", tau, result.tau_perp + 1e-9)
        )
    return checks


_SUITES = {
    "conservation": _suite_conservation,
    "offset": _suite_offset,
    "ehrenfest": _suite_ehrenfest,
    "robertson": _suite_robertson,
    "schrodinger": _suite_schrodinger,
    "mt": _suite_mt,
    "ml": _suite_ml,
    "qsl": _suite_qsl,
}


# -------------------------------------------------------------------- commands

def _resolve_seed(cli_seed: int | None) -> int:
    if cli_seed is not None:
        return cli_seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ScenarioFormatError(
                f"{SEED_ENV_VAR} must be an integer, got {env!r}"
            ) from None
    return DEFAULT_SEED


def _input_digest(scenario_path: str | None) -> str:
    if scenario_path is None:
        return "builtin:presets"
    with open(scenario_path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def _json_safe(x: float):
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else "-inf"
    return x


def build_report(suite: str, checks: list[Check], seed: int, digest: str) -> dict:
    verdicts = [c.verdict for c in checks]
    return {
        "suite": suite,
        "tool": "quncert",
        "version": __version__,
        "seed": seed,
        "input_digest": digest,
        "checks": [
            {
                "name": c.name,
                "lhs": _json_safe(c.lhs),
                "rhs": _json_safe(c.rhs),
                "slack": _json_safe(c.slack),
                "verdict": c.verdict,
            }
            for c in checks
        ],
        "counts": {
            "pass": verdicts.count("pass"),
            "fail": verdicts.count("fail"),
            "inconclusive": verdicts.count("inconclusive"),
        },
        "passed": all(v == "pass" for v in verdicts),
    }


def cmd_evolve(args) -> int:
    scenario = load_scenario(args.scenario)
    trajectory = dynamics.evolve(scenario, store_states=False)
    if args.output is None:
        write_trajectory_csv(trajectory, sys.stdout)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            write_trajectory_csv(trajectory, fh)
    return EXIT_PASS


_FIGURE_PANELS = {
    "fig1": ("fig1A", "fig1B", "fig1C", "fig1D"),
    "fig2": ("fig2A", "fig2B", "fig2C", "fig2D"),
    "fig3": ("fig3AB", "fig3CD"),
}


def _write_figure_panel(figure: str, panel: str, outdir: str) -> list[str]:
    preset = qubit.FIGURE_PRESETS[panel]
    written = []

    if figure == "fig1":
        plus, minus = qubit.spin_projectors("z")
        observables = {"proj_up_z": plus, "proj_down_z": minus}
        trajectory = dynamics.evolve(
            qubit.qubit_scenario(preset, observables), store_states=False
        )
        path = os.path.join(outdir, f"{panel}.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            write_trajectory_csv(trajectory, fh)
        return [path]

    if figure == "fig2":
        trajectory = dynamics.evolve(qubit.qubit_scenario(preset), store_states=False)
        path = os.path.join(outdir, f"{panel}.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            write_trajectory_csv(trajectory, fh)
        written.append(path)
        try:
            report = qubit.tick_tock(trajectory, "sx")
        except ValueError:
            return written  # panel without a clock signal gets no annotations
        ticks_path = os.path.join(outdir, f"{panel}_ticks.csv")
        with open(ticks_path, "w", encoding="utf-8", newline="") as fh:
            fh.write("time,kind\n")
            for t, kind in report.extrema:
                fh.write(f"{format_value(t)},{kind}\n")
        written.append(ticks_path)
        return written

    # fig3: Mandelstam-Tamm timescale and product, in 1/omega and hbar/2 units
    s = qubit.qubit_scenario(preset)
    samples = uncertainty.mt_series(s.observables["sx"], s)
    half_hbar = 0.5 * preset.hbar
    path = os.path.join(outdir, f"{panel}.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("t,delta_t,product\n")
        for smp in samples:
            fh.write(
                f"{format_value(smp.t)},"
                f"{format_value(smp.delta_t * preset.omega)},"
                f"{format_value(smp.product / half_hbar)}\n"
            )
    return [path]


def cmd_figure(args) -> int:
    os.makedirs(args.outdir, exist_ok=True)
    for panel in _FIGURE_PANELS[args.figure]:
        for path in _write_figure_panel(args.figure, panel, args.outdir):
            print(path)
    return EXIT_PASS


def cmd_verify(args) -> int:
    scenario = load_scenario(args.scenario) if args.scenario else None
    seed = _resolve_seed(args.seed)
    digest = _input_digest(args.scenario)
    suites = list(_SUITES) if args.suite == "all" else [args.suite]

    checks: list[Check] = []
    for suite in suites:
        rng = np.random.default_rng(seed)
        checks += _SUITES[suite](scenario, rng)

    report = build_report(args.suite, checks, seed, digest)
    text = json.dumps(report, indent=2)
    if args.report is None:
        print(text)
    else:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")

    verdicts = {c.verdict for c in checks}
    if "fail" in verdicts:
        return EXIT_FAIL
    if "inconclusive" in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="quncert",
        description="Closed-system quantum dynamics and time-energy uncertainty checks.",
    )
    parser.add_argument("--version", action="version", version=f"quncert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_evolve = sub.add_parser("evolve", help="sample a scenario trajectory to CSV")
    p_evolve.add_argument("scenario", help="scenario JSON file")
    p_evolve.add_argument("-o", "--output", help="output CSV path (default stdout)")

    p_figure = sub.add_parser("figure", help="emit per-panel CSV data for a figure")
    p_figure.add_argument("figure", choices=sorted(_FIGURE_PANELS))
    p_figure.add_argument("-d", "--outdir", default=".", help="output directory")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=VERIFY_SUITES)
    p_verify.add_argument("--scenario", help="scenario JSON to verify instead of presets")
    p_verify.add_argument("--seed", type=int, help=f"rng seed (default {DEFAULT_SEED})")
    p_verify.add_argument("--report", help="write the JSON report here instead of stdout")

    args = parser.parse_args(argv)
    try:
        if args.command == "evolve":
            return cmd_evolve(args)
        if args.command == "figure":
            return cmd_figure(args)
        return cmd_verify(args)
    except (ScenarioFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
