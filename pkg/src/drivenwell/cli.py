"""Configuration-driven command line front end.

One flat key = value configuration (file and/or command line overrides)
drives every task:

    spectrum   static eigenvalues and Floquet states at one drive amplitude
    sweep      quasienergies/mean energies over an amplitude grid + crossings
    tunnel     coherent population dynamics of the crossing triple
    dissipate  master-equation trajectory, decoherence/relaxation times
    attractor  asymptotic state over temperature/amplitude lists
    classical  stroboscopic phase-space portrait
    validate   dry-run configuration and weak-coupling checks

Artifacts are deterministic for a fixed configuration (the manifest
timestamp aside) and carry the configuration hash in every header; the
manifest lists everything a run produced.  The environment variable
DRIVENWELL_OUTPUT_ROOT prefixes relative output directories.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import artifacts
from .basis import solve_h0
from .classical import portrait
from .dissipation import (
    assemble_periodic_generator, assemble_rwa_kernel, asymptotic_state,
    decoherence_time, localized_triple, propagate, purity, relaxation_time,
    restrict_to_three_levels, x_fourier_coefficients,
)
from .floquet import brillouin_reduce, classify_configuration, \
    detect_crossings, solve_spectrum, sweep_amplitude
from .params import BathParams, SystemParams
from .threestate import eigensystem, fit_from_spectrum

__all__ = ["ScenarioConfig", "run", "main", "parse_config_text"]

TASKS = ("spectrum", "sweep", "tunnel", "dissipate", "attractor", "classical",
         "validate")


@dataclass(frozen=True)
class ScenarioConfig:
    """Flat scenario description; every field can be set in the config file
    or overridden on the command line."""

    task: str = "spectrum"
    # system
    barrier_height: float = 4.0
    drive_frequency: float = 0.982
    drive_amplitude: float = 0.015029
    # bath
    gamma: float = 1e-6
    temperature: float = 1e-4
    temperature_list: tuple[float, ...] = ()
    # truncations
    basis_size: int = 300
    num_states: int = 60
    n_sidebands: int = 16
    retained: int = 20
    track_lowest: int = 16
    # amplitude grids
    amplitude_start: float = 0.010
    amplitude_stop: float = 0.018
    amplitude_count: int = 17
    fit_window_start: float = 0.013
    fit_window_stop: float = 0.017
    fit_window_count: int = 13
    amplitude_list: tuple[float, ...] = ()
    # propagation
    generator: str = "rwa"            # rwa | periodic
    time_max: float = 0.0             # 0: choose from the beat period
    time_samples: int = 600
    steps_per_period: int = 64
    purity_threshold: float = 0.9
    three_level_compare: bool = True
    # classical portraits
    classical_periods: int = 400
    classical_steps_per_period: int = 256
    seed_x_min: float = -8.0
    seed_x_max: float = 8.0
    seed_x_count: int = 24
    seed_p_min: float = -1.0
    seed_p_max: float = 1.0
    seed_p_count: int = 5
    # execution
    workers: int = 1
    output_dir: str = "out"

    def __post_init__(self):
        if self.task not in TASKS:
            raise ValueError(f"task must be one of {TASKS}, got {self.task!r}")
        positive = ("barrier_height", "drive_frequency", "basis_size",
                    "num_states", "n_sidebands", "retained", "track_lowest",
                    "amplitude_count", "fit_window_count", "time_samples",
                    "steps_per_period", "classical_periods",
                    "classical_steps_per_period", "seed_x_count",
                    "seed_p_count", "workers")
        for name in positive:
            if getattr(self, name) <= 0:
                raise ValueError(f"field {name} must be positive, got "
                                 f"{getattr(self, name)}")
        nonneg = ("drive_amplitude", "gamma", "temperature", "time_max")
        for name in nonneg:
            if getattr(self, name) < 0:
                raise ValueError(f"field {name} must be >= 0, got "
                                 f"{getattr(self, name)}")
        for name in ("temperature_list", "amplitude_list"):
            values = getattr(self, name)
            if any(v < 0 for v in values):
                raise ValueError(f"field {name} contains negative entries")
            if list(values) != sorted(values):
                raise ValueError(f"field {name} must be sorted ascending")
        if self.amplitude_stop <= self.amplitude_start:
            raise ValueError("amplitude_stop must exceed amplitude_start")
        if self.fit_window_stop <= self.fit_window_start:
            raise ValueError("fit_window_stop must exceed fit_window_start")
        if self.generator not in ("rwa", "periodic"):
            raise ValueError(f"generator must be rwa or periodic, got "
                             f"{self.generator!r}")

    # -- derived objects ---------------------------------------------------

    @property
    def system(self) -> SystemParams:
        return SystemParams(self.barrier_height, self.drive_amplitude,
                            self.drive_frequency)

    @property
    def bath(self) -> BathParams:
        return BathParams(self.gamma, self.temperature)

    @property
    def temperatures(self) -> tuple[float, ...]:
        return self.temperature_list or (self.temperature,)

    @property
    def amplitudes(self) -> tuple[float, ...]:
        return self.amplitude_list or (self.drive_amplitude,)

    def amplitude_grid(self) -> np.ndarray:
        return np.linspace(self.amplitude_start, self.amplitude_stop,
                           self.amplitude_count)

    def fit_window(self) -> np.ndarray:
        return np.linspace(self.fit_window_start, self.fit_window_stop,
                           self.fit_window_count)

    def resolved_output_dir(self) -> Path:
        root = os.environ.get("DRIVENWELL_OUTPUT_ROOT", "")
        path = Path(self.output_dir)
        if root and not path.is_absolute():
            path = Path(root) / path
        return path

    def canonical_text(self) -> str:
        # output location and worker count do not influence results and stay
        # outside the hash
        skip = {"output_dir", "workers"}
        parts = []
        for f in sorted(fields(self), key=lambda f: f.name):
            if f.name in skip:
                continue
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = ",".join(repr(v) for v in value)
            parts.append(f"{f.name} = {value}")
        return "\n".join(parts) + "\n"

    def digest(self) -> str:
        return artifacts.config_hash(self.canonical_text())


_FIELD_TYPES = {f.name: f.type for f in fields(ScenarioConfig)}
_LIST_FIELDS = {"temperature_list", "amplitude_list"}
_INT_FIELDS = {"basis_size", "num_states", "n_sidebands", "retained",
               "track_lowest", "amplitude_count", "fit_window_count",
               "time_samples", "steps_per_period", "classical_periods",
               "classical_steps_per_period", "seed_x_count", "seed_p_count",
               "workers"}
_STR_FIELDS = {"task", "generator", "output_dir"}
_BOOL_FIELDS = {"three_level_compare"}


def _coerce(name: str, raw: str):
    if name not in _FIELD_TYPES:
        raise ValueError(f"unknown configuration field {name!r}")
    raw = raw.strip()
    try:
        if name in _STR_FIELDS:
            return raw
        if name in _BOOL_FIELDS:
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        if name in _LIST_FIELDS:
            if not raw:
                return ()
            return tuple(float(v) for v in raw.split(","))
        if name in _INT_FIELDS:
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ValueError(f"field {name}: cannot parse value {raw!r} ({exc})")


def parse_config_text(text: str, line_offset: int = 0) -> dict:
    """Parse flat ``key = value`` lines; '#' starts a comment.  Errors name
    the offending line and field."""
    values = {}
    for i, line in enumerate(text.splitlines(), start=1 + line_offset):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ValueError(f"line {i}: expected 'key = value', got {line!r}")
        key, raw = body.split("=", 1)
        key = key.strip()
        try:
            values[key] = _coerce(key, raw)
        except ValueError as exc:
            raise ValueError(f"line {i}: {exc}")
    return values


def load_config(path=None, overrides=(), task: str | None = None) -> ScenarioConfig:
    values = {}
    if path is not None:
        values.update(parse_config_text(Path(path).read_text()))
    for item in overrides:
        if "=" not in item:
            raise ValueError(f"override must look like key=value, got {item!r}")
        key, raw = item.split("=", 1)
        values[key.strip()] = _coerce(key.strip(), raw)
    if task is not None:
        values["task"] = task
    return ScenarioConfig(**values)


# ---------------------------------------------------------------------------
# shared pieces
# ---------------------------------------------------------------------------

def _static_spectrum(config: ScenarioConfig):
    return solve_h0(config.system, config.basis_size, config.num_states)


@dataclass
class CrossingContext:
    """Crossing located in the fit window: sweep, report, three-state fit and
    the continuity labels of (spectator, lower mixed, upper mixed)."""

    sweep: object
    report: object
    fit: object
    labels: tuple[int, int, int]


def locate_crossing(h0, config: ScenarioConfig) -> CrossingContext:
    """Sweep the fit window, find its avoided crossing and fit the model."""
    params = config.system
    window = config.fit_window()
    sweep = sweep_amplitude(h0, params, window, config.n_sidebands,
                            track_lowest=config.track_lowest,
                            workers=config.workers)
    reports = detect_crossings(sweep, refine=False)
    avoided = [r for r in reports if r.kind == "avoided"]
    if not avoided:
        raise RuntimeError("no avoided crossing inside the fit window "
                           f"[{window[0]}, {window[-1]}]")
    report = min(avoided, key=lambda r: r.gap)
    la, lb = report.labels
    omega = params.drive_frequency

    f_a, eps_a, _, par_pair = sweep.branch(la)
    f_b, eps_b, _, _ = sweep.branch(lb)
    # spectator: opposite parity, quasienergy closest to the pair at the
    # crossing (the other doublet partner)
    i_cross = int(np.argmin(np.abs(sweep.amplitudes - report.amplitude)))
    center = brillouin_reduce(0.5 * (eps_a[i_cross] + eps_b[i_cross]), omega)
    best_label, best_dist = None, np.inf
    for lab in set(np.concatenate(sweep.labels).tolist()):
        f_s, eps_s, _, par_s = sweep.branch(lab)
        if par_s is None or par_s == par_pair or f_s.size != window.size:
            continue
        dist = abs(brillouin_reduce(eps_s[i_cross] - center, omega))
        if dist < best_dist:
            best_label, best_dist = lab, dist
    if best_label is None:
        raise RuntimeError("no opposite-parity spectator branch found")

    _, eps_s, energy_s, _ = sweep.branch(best_label)
    _, _, energy_a, _ = sweep.branch(la)
    _, _, energy_b, _ = sweep.branch(lb)
    # far-window mean energies identify the regular and chaotic characters
    e_regular = min(energy_a[0], energy_b[0])
    e_chaotic = max(energy_a[0], energy_b[0])
    fit = fit_from_spectrum(window, eps_s, eps_a, eps_b, omega=omega,
                            mean_energies_far=(energy_s[0], e_regular,
                                               e_chaotic))
    # order the mixed pair by quasienergy relative to the spectator at the
    # left window edge (lower branch first)
    y_a = brillouin_reduce(eps_a[0] - eps_s[0], omega)
    y_b = brillouin_reduce(eps_b[0] - eps_s[0], omega)
    lo, up = (la, lb) if y_a <= y_b else (lb, la)
    return CrossingContext(sweep=sweep, report=report, fit=fit,
                           labels=(best_label, lo, up))


def _triple_indices(spectrum, context: CrossingContext, amplitude: float):
    """Indices of the crossing triple inside a retained spectrum at some
    amplitude, matched by overlap with the labeled sweep branches."""
    sweep = context.sweep
    i_grid = int(np.argmin(np.abs(sweep.amplitudes - amplitude)))
    out = []
    for lab in context.labels:
        ref = sweep.state(i_grid, lab)
        scores = [s.overlap(ref) if s.parity == ref.parity else -1.0
                  for s in spectrum.states]
        out.append(int(np.argmax(scores)))
    if len(set(out)) != 3:
        raise RuntimeError("crossing triple could not be identified in the "
                           "retained spectrum")
    return tuple(out)


def _dissipative_setup(h0, config: ScenarioConfig, amplitude: float,
                       bath: BathParams, context: CrossingContext):
    params = config.system.replace_amplitude(amplitude)
    spectrum = solve_spectrum(h0, params, config.n_sidebands).lowest(
        config.retained)
    x = x_fourier_coefficients(spectrum.states, h0.x_elements)
    indices = _triple_indices(spectrum, context, amplitude)
    detuning = context.fit.detuning_at(amplitude)
    model = context.fit.params.replace_detuning(detuning)
    _, _, _, beta = eigensystem(model)
    triple = localized_triple(spectrum, indices, beta)
    kernel = assemble_rwa_kernel(x, bath)
    return spectrum, x, kernel, triple


# ---------------------------------------------------------------------------
# tasks
# ---------------------------------------------------------------------------

def run_spectrum(config: ScenarioConfig, manifest: artifacts.Manifest):
    h0 = _static_spectrum(config)
    manifest.add_csv("static_spectrum", "static_spectrum",
                     ("k", "energy", "parity"),
                     [(k, h0.energies[k], h0.parities[k])
                      for k in range(h0.size)])
    spec = solve_spectrum(h0, config.system, config.n_sidebands)
    manifest.add_csv("floquet_states", "floquet_states",
                     ("label", "parity", "quasienergy", "mean_energy"),
                     [(i, s.parity, s.quasienergy, s.mean_energy)
                      for i, s in enumerate(spec.states)])
    return {"states": len(spec.states)}


def run_sweep(config: ScenarioConfig, manifest: artifacts.Manifest):
    h0 = _static_spectrum(config)
    sweep = sweep_amplitude(h0, config.system, config.amplitude_grid(),
                            config.n_sidebands,
                            track_lowest=config.track_lowest,
                            workers=config.workers)
    rows = []
    for f_val, spec, labels in zip(sweep.amplitudes, sweep.spectra,
                                   sweep.labels):
        for lab, state in zip(labels, spec.states):
            rows.append((f_val, lab, state.parity, state.quasienergy,
                         state.mean_energy))
    manifest.add_csv("sweep", "sweep",
                     ("amplitude", "label", "parity", "quasienergy",
                      "mean_energy"), rows)

    # doublet splitting along the sweep: the two lowest-mean-energy branches
    omega = config.drive_frequency
    splits = []
    for f_val, spec in zip(sweep.amplitudes, sweep.spectra):
        eps = [s.quasienergy for s in spec.states[:2]]
        e_mean = [s.mean_energy for s in spec.states[:2]]
        splits.append((f_val, abs(brillouin_reduce(eps[1] - eps[0], omega)),
                       abs(e_mean[1] - e_mean[0])))
    manifest.add_csv("doublet_splitting", "doublet_splitting",
                     ("amplitude", "quasienergy_splitting",
                      "mean_energy_splitting"), splits)

    reports = detect_crossings(sweep)
    payload = {"crossings": [
        {"kind": r.kind, "amplitude": r.amplitude,
         "labels": list(r.labels), "parities": list(r.parities),
         "gap": r.gap, "bracket": list(r.bracket) if r.bracket else None,
         "configuration": classify_configuration(reports, r)
                          if r.kind == "avoided" else None}
        for r in reports]}
    manifest.add_json("crossings", "crossings", payload)
    if sweep.gaps:
        payload["continuity_gaps"] = [list(g) for g in sweep.gaps]
    # the splitting need not return to its pre-crossing value on the far
    # side; report the window-edge asymmetry alongside the crossings
    split_left, split_right = splits[0][1], splits[-1][1]
    return {"grid_points": sweep.amplitudes.size, "crossings": len(reports),
            "splitting_window_edges": (split_left, split_right),
            "splitting_asymmetry": abs(split_right - split_left)
                                   / max(split_right, split_left)}


def run_tunnel(config: ScenarioConfig, manifest: artifacts.Manifest):
    h0 = _static_spectrum(config)
    context = locate_crossing(h0, config)
    amplitude = config.drive_amplitude
    params = config.system
    spectrum = solve_spectrum(h0, params, config.n_sidebands).lowest(
        config.retained)
    i_s, i_lo, i_up = _triple_indices(spectrum, context, amplitude)
    omega = config.drive_frequency
    eps_s = spectrum.states[i_s].quasienergy
    f_lo = brillouin_reduce(spectrum.states[i_lo].quasienergy - eps_s, omega)
    f_up = brillouin_reduce(spectrum.states[i_up].quasienergy - eps_s, omega)
    detuning = context.fit.detuning_at(amplitude)
    model = context.fit.params.replace_detuning(detuning)
    _, _, _, beta = eigensystem(model)

    beat = 2.0 * np.pi / abs(f_up - f_lo)
    t_max = config.time_max or 10.0 * beat
    times = np.linspace(0.0, t_max, config.time_samples)
    c2, s2 = np.cos(beta) ** 2, np.sin(beta) ** 2
    beat_cos = np.cos((f_lo - f_up) * times)
    p_r = 0.5 * (1 + np.cos(f_lo * times) * c2 + np.cos(f_up * times) * s2
                 + (beat_cos - 1) * c2 * s2)
    p_l = 0.5 * (1 - np.cos(f_lo * times) * c2 - np.cos(f_up * times) * s2
                 + (beat_cos - 1) * c2 * s2)
    p_c = (1 - beat_cos) * c2 * s2
    manifest.add_csv("tunnel", "tunnel",
                     ("t", "p_right", "p_left", "p_chaotic"),
                     np.column_stack([times, p_r, p_l, p_c]))

    # model levels over the window (three-state theory curves)
    rows = []
    for f_val in context.sweep.amplitudes:
        m = context.fit.params_at(f_val)
        e0, e1, e2, b_ang = eigensystem(m)
        from .threestate import mean_energies as model_means
        em0, em1, em2 = model_means(m, b_ang)
        rows.append((f_val, m.detuning, e0, e1, e2, em0, em1, em2))
    manifest.add_csv("model_levels", "model_levels",
                     ("amplitude", "detuning", "eps_spectator", "eps_lower",
                      "eps_upper", "mean_spectator", "mean_lower",
                      "mean_upper"), rows)
    return {"mixing_angle": beta, "beat_period": beat,
            "splitting": context.fit.params.splitting,
            "coupling": context.fit.params.coupling}


def run_dissipate(config: ScenarioConfig, manifest: artifacts.Manifest):
    h0 = _static_spectrum(config)
    context = locate_crossing(h0, config)
    bath = config.bath
    spectrum, x, kernel, triple = _dissipative_setup(
        h0, config, config.drive_amplitude, bath, context)
    sigma0 = triple.initial_density_matrix(config.retained)
    t_max = config.time_max or 100.0 * triple.beat_period
    times = np.linspace(0.0, t_max, config.time_samples)
    if config.generator == "periodic":
        gen = assemble_periodic_generator(x, bath)
        traj = propagate(sigma0, gen, times,
                         steps_per_period=config.steps_per_period)
    else:
        traj = propagate(sigma0, kernel, times)
    rows = np.column_stack([
        traj.times, traj.expectation(triple.right),
        traj.expectation(triple.left), traj.expectation(triple.chaotic),
        traj.purity()])
    manifest.add_csv("trajectory", "trajectory",
                     ("t", "p_right", "p_left", "p_chaotic", "purity"), rows)
    t_dec = decoherence_time(kernel, sigma0, triple.beat_period,
                             threshold=config.purity_threshold)
    t_rel = relaxation_time(kernel)
    summary = {
        "amplitude": config.drive_amplitude,
        "gamma": bath.damping,
        "temperature": bath.temperature,
        "t_decoherence": t_dec,
        "t_relaxation": t_rel,
        "beat_period": triple.beat_period,
        "trace_drift": traj.trace_drift,
        "hermiticity_drift": traj.hermiticity_drift,
    }
    manifest.add_json("timescales", "timescales", summary)
    return summary


def run_attractor(config: ScenarioConfig, manifest: artifacts.Manifest):
    h0 = _static_spectrum(config)
    needs_triple = config.three_level_compare and config.drive_amplitude > 0
    context = locate_crossing(h0, config) if needs_triple else None
    occupation_rows = []
    coherence_rows = []
    for amplitude in config.amplitudes:
        params = config.system.replace_amplitude(amplitude)
        spectrum = solve_spectrum(h0, params, config.n_sidebands).lowest(
            config.retained)
        x = x_fourier_coefficients(spectrum.states, h0.x_elements)
        indices = _triple_indices(spectrum, context, amplitude) \
            if context is not None else None
        for kt in config.temperatures:
            bath = BathParams(config.gamma, kt)
            kernel = assemble_rwa_kernel(x, bath)
            sigma = asymptotic_state(kernel)
            pops = np.real(np.diag(sigma))
            for i, s in enumerate(spectrum.states):
                occupation_rows.append((amplitude, kt, i, s.parity,
                                        s.mean_energy, pops[i]))
            pur3 = float("nan")
            if indices is not None:
                kernel3 = restrict_to_three_levels(x, bath, indices)
                pur3 = purity(asymptotic_state(kernel3))
            coherence_rows.append((amplitude, kt, purity(sigma), pur3))
    manifest.add_csv("occupation", "occupation",
                     ("amplitude", "temperature", "label", "parity",
                      "mean_energy", "occupation"), occupation_rows)
    manifest.add_csv("coherence", "coherence",
                     ("amplitude", "temperature", "purity",
                      "purity_three_level"), coherence_rows)
    return {"points": len(coherence_rows)}


def run_classical(config: ScenarioConfig, manifest: artifacts.Manifest):
    xs = np.linspace(config.seed_x_min, config.seed_x_max, config.seed_x_count)
    ps = np.linspace(config.seed_p_min, config.seed_p_max, config.seed_p_count)
    seeds = np.array([(x0, p0) for x0 in xs for p0 in ps])
    cloud = portrait(seeds, config.classical_periods, config.system,
                     config.classical_steps_per_period)
    rows = []
    for sid in range(cloud.shape[0]):
        for n in range(cloud.shape[1]):
            rows.append((sid, n, cloud[sid, n, 0], cloud[sid, n, 1]))
    manifest.add_csv("portrait", "portrait", ("seed_id", "n", "x", "p"), rows)
    return {"seeds": len(seeds), "periods": config.classical_periods}


def run_validate(config: ScenarioConfig, manifest: artifacts.Manifest | None = None):
    """Dry-run checks; returns a report dict instead of artifacts."""
    bath = config.bath
    warnings_list = bath.weak_coupling_warnings()
    infos = []
    if config.gamma > 0 and config.task in ("dissipate", "attractor"):
        # cheap spectral estimate for the level-width condition
        h0 = solve_h0(config.system, basis_size=160,
                      num_states=min(config.num_states, 24))
        spec = solve_spectrum(h0, config.system,
                              min(config.n_sidebands, 10))
        retained = spec.states[:min(config.retained, len(spec.states))]
        eps = np.array([s.quasienergy for s in retained])
        gaps = np.abs(np.subtract.outer(eps, eps))
        min_gap = float(np.min(gaps[gaps > 0])) if gaps.size > 1 else None
        with_gap = bath.weak_coupling_warnings(min_gap=min_gap)
        warnings_list += with_gap[len(warnings_list):]
    if config.temperature == 0 and not config.temperature_list \
            and config.task == "attractor":
        infos.append("temperature is zero: upward rates vanish identically; "
                     "the attractor collapses onto the lowest states")
    if config.retained > config.num_states:
        warnings_list.append(
            f"retained={config.retained} exceeds num_states="
            f"{config.num_states}; the master equation basis will be short")
    report = {"task": config.task, "warnings": warnings_list, "infos": infos}
    return report


_RUNNERS = {
    "spectrum": run_spectrum,
    "sweep": run_sweep,
    "tunnel": run_tunnel,
    "dissipate": run_dissipate,
    "attractor": run_attractor,
    "classical": run_classical,
}


def run(config: ScenarioConfig) -> dict:
    """Execute one task; writes artifacts plus manifest and returns the
    summary dictionary."""
    if config.task == "validate":
        return run_validate(config)
    out_dir = config.resolved_output_dir()
    manifest = artifacts.Manifest(out_dir, config.task, config.digest())
    summary = _RUNNERS[config.task](config, manifest)
    manifest.write()
    return summary


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="drivenwell",
        description="Floquet spectra and dissipative dynamics of the driven "
                    "double well")
    sub = parser.add_subparsers(dest="task", required=True)
    for task in TASKS:
        p = sub.add_parser(task, help=f"run the {task} task")
        p.add_argument("--config", type=Path, default=None,
                       help="key = value configuration file")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VAL",
                       help="override one configuration field (repeatable)")
        p.add_argument("--output", default=None,
                       help="output directory (overrides output_dir)")
    args = parser.parse_args(argv)

    overrides = list(args.set)
    if args.output is not None:
        overrides.append(f"output_dir={args.output}")
    # `validate` inspects the configuration's declared task instead of
    # replacing it, so task-specific checks still apply
    forced_task = None if args.task == "validate" else args.task
    try:
        config = load_config(args.config, overrides, task=forced_task)
    except (ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    if args.task == "validate":
        report = run_validate(config)
        for note in report["warnings"]:
            print(f"warning: {note}")
        for note in report["infos"]:
            print(f"info: {note}")
        if not report["warnings"]:
            print("configuration valid; no warnings")
        return 0
    try:
        summary = run(config)
    except Exception as exc:  # noqa: BLE001 - surface task failures as exit codes
        print(f"{config.task} failed: {exc}", file=sys.stderr)
        return 1
    print(f"{config.task}: " + ", ".join(
        f"{k}={v}" for k, v in summary.items()))
    print(f"artifacts in {config.resolved_output_dir()}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
