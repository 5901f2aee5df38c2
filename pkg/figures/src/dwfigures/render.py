"""Figure builders for the driven-well artifact schemas.

Each builder consumes versioned CSV/JSON artifacts and produces one vector
image. Rendering is deterministic (fixed SVG hash salt, no date metadata),
never mutates its inputs, and re-rendering reproduces the file byte for
byte.

Figure identifiers follow the reference set:

    2    classical stroboscopic portrait        (portrait.csv)
    4    three-level model levels vs detuning   (model_levels.csv)
    5    quasienergy/mean-energy sweep          (sweep.csv)
    6    doublet splitting along the sweep      (doublet_splitting.csv)
    7    coherent tunneling populations         (tunnel.csv)
    8    dissipative populations + purity       (trajectory.csv)
    9    decoherence/relaxation time scales     (timescales .json files)
    10   attractor occupations vs mean energy   (occupation.csv)
    11   attractor coherence                    (coherence.csv)
    12   full vs three-level coherence          (coherence.csv)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .artifacts import ArtifactError, read_summary, read_table

__all__ = ["FigureSpec", "render", "FIGURES"]

plt.rcParams["svg.hashsalt"] = "dwfigures"


@dataclass(frozen=True)
class FigureSpec:
    """One figure request: identifier, artifact directory, output target."""

    figure_id: str
    artifact_dir: Path
    output_dir: Path
    formats: tuple[str, ...] = ("svg",)
    style: dict = field(default_factory=dict)

    def artifact(self, name: str) -> Path:
        return Path(self.artifact_dir) / name


def _save(fig, spec: FigureSpec, stem: str) -> list[Path]:
    out_dir = Path(spec.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for fmt in spec.formats:
        target = out_dir / f"{stem}.{fmt}"
        fig.savefig(target, format=fmt, metadata={"Date": None})
        written.append(target)
    plt.close(fig)
    return written


def _parity_style(parity: float) -> str:
    return "-" if parity > 0 else "--"


def fig_portrait(spec: FigureSpec):
    table = read_table(spec.artifact("portrait.csv"), "portrait")
    seed_ids = table.column("seed_id")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for sid in np.unique(seed_ids):
        rows = table.rows_where("seed_id", sid)
        ax.plot(rows.column("x"), rows.column("p"), ".", ms=0.4, alpha=0.7)
    ax.set(xlabel="x", ylabel="p",
           title="stroboscopic phase-space portrait")
    return _save(fig, spec, "fig02_portrait")


def fig_model_levels(spec: FigureSpec):
    table = read_table(spec.artifact("model_levels.csv"), "model_levels")
    detuning = table.column("detuning")
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 7), sharex=True)
    ax1.plot(detuning, table.column("eps_spectator"), "-",
             label="spectator (even)")
    ax1.plot(detuning, table.column("eps_lower"), "--", label="lower (odd)")
    ax1.plot(detuning, table.column("eps_upper"), "--", label="upper (odd)")
    ax1.set(ylabel="quasienergy", title="three-level crossing model")
    ax1.legend(fontsize=8)
    ax2.plot(detuning, table.column("mean_spectator"), "-")
    ax2.plot(detuning, table.column("mean_lower"), "--")
    ax2.plot(detuning, table.column("mean_upper"), "--")
    ax2.set(xlabel="detuning", ylabel="mean energy")
    return _save(fig, spec, "fig04_model_levels")


def fig_sweep(spec: FigureSpec):
    table = read_table(spec.artifact("sweep.csv"), "sweep")
    labels = table.column("label")
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.5, 7), sharex=True)
    for lab in np.unique(labels):
        rows = table.rows_where("label", lab)
        parity = rows.column("parity")[0]
        amp = rows.column("amplitude")
        ax1.plot(amp, rows.column("quasienergy"), _parity_style(parity),
                 lw=0.9)
        ax2.plot(amp, rows.column("mean_energy"), _parity_style(parity),
                 lw=0.9)
    ax1.set(ylabel="quasienergy",
            title="amplitude sweep (full: even, dashed: odd)")
    ax2.set(xlabel="drive amplitude", ylabel="mean energy")
    return _save(fig, spec, "fig05_sweep")


def fig_splitting(spec: FigureSpec):
    table = read_table(spec.artifact("doublet_splitting.csv"),
                       "doublet_splitting")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(table.column("amplitude"),
                table.column("quasienergy_splitting"), "o-", ms=3,
                label="quasienergy splitting")
    ax.semilogy(table.column("amplitude"),
                table.column("mean_energy_splitting"), "s--", ms=3,
                label="mean-energy splitting")
    ax.set(xlabel="drive amplitude", ylabel="splitting",
           title="ground doublet splitting")
    ax.legend(fontsize=8)
    return _save(fig, spec, "fig06_splitting")


def fig_tunnel(spec: FigureSpec):
    table = read_table(spec.artifact("tunnel.csv"), "tunnel")
    t = table.column("t")
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(t, table.column("p_right"), "-", lw=1, label="right")
    ax.plot(t, table.column("p_left"), "--", lw=1, label="left")
    ax.plot(t, table.column("p_chaotic"), ":", lw=1.2, label="chaotic")
    ax.set(xlabel="time", ylabel="population",
           title="coherent tunneling near the crossing")
    ax.legend(fontsize=8)
    return _save(fig, spec, "fig07_tunnel")


def fig_trajectory(spec: FigureSpec):
    table = read_table(spec.artifact("trajectory.csv"), "trajectory")
    t = table.column("t")
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(t, table.column("p_right"), "-", lw=0.9, label="right")
    ax.plot(t, table.column("p_left"), "--", lw=0.9, label="left")
    ax.plot(t, table.column("p_chaotic"), ":", lw=1.1, label="chaotic")
    ax.plot(t, table.column("purity"), "-.", lw=1.4, color="k",
            label=r"tr $\rho^2$")
    ax.set(xlabel="time", ylabel="population / purity",
           title="dissipative tunneling")
    ax.legend(fontsize=8)
    return _save(fig, spec, "fig08_trajectory")


def fig_timescales(spec: FigureSpec):
    paths = sorted(Path(spec.artifact_dir).glob("**/timescales.json"))
    if not paths:
        raise ArtifactError(
            f"no timescales.json artifacts under {spec.artifact_dir}")
    rows = [read_summary(p, "timescales") for p in paths]
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 7), sharex=True)
    temps = sorted({r["temperature"] for r in rows})
    for kt in temps:
        sel = sorted((r for r in rows if r["temperature"] == kt),
                     key=lambda r: r["amplitude"])
        amps = [r["amplitude"] for r in sel]
        ax1.semilogy(amps, [r["t_decoherence"] for r in sel], "o-", ms=3,
                     label=f"kT = {kt:g}")
        ax2.semilogy(amps, [r["t_relaxation"] for r in sel], "o-", ms=3)
    ax1.set(ylabel=r"$t_{decoh}$", title="dissipative time scales")
    ax1.legend(fontsize=8)
    ax2.set(xlabel="drive amplitude", ylabel=r"$t_{relax}$")
    return _save(fig, spec, "fig09_timescales")


def fig_occupation(spec: FigureSpec):
    table = read_table(spec.artifact("occupation.csv"), "occupation")
    amps = np.unique(table.column("amplitude"))
    fig, axes = plt.subplots(len(amps), 1, figsize=(6, 3 * len(amps)),
                             squeeze=False, sharex=True)
    for ax, amp in zip(axes[:, 0], amps):
        rows = table.rows_where("amplitude", amp)
        for kt in np.unique(rows.column("temperature")):
            sel = rows.rows_where("temperature", kt)
            order = np.argsort(sel.column("mean_energy"))
            ax.semilogy(sel.column("mean_energy")[order],
                        np.maximum(sel.column("occupation")[order], 1e-30),
                        "o-", ms=3, label=f"kT = {kt:g}")
        ax.set(ylabel="occupation", title=f"F = {amp:g}", ylim=(1e-10, 2))
        ax.legend(fontsize=7)
    axes[-1, 0].set(xlabel="mean energy")
    return _save(fig, spec, "fig10_occupation")


def _coherence_axes(table, ax, column, label_prefix=""):
    amps = np.unique(table.column("amplitude"))
    temps = np.unique(table.column("temperature"))
    if amps.size > 1:
        for kt in temps:
            sel = table.rows_where("temperature", kt)
            order = np.argsort(sel.column("amplitude"))
            ax.plot(sel.column("amplitude")[order], sel.column(column)[order],
                    "o-", ms=3, label=f"{label_prefix}kT = {kt:g}")
        ax.set_xlabel("drive amplitude")
    else:
        order = np.argsort(table.column("temperature"))
        ax.semilogx(table.column("temperature")[order],
                    table.column(column)[order], "o-", ms=3,
                    label=f"{label_prefix}F = {amps[0]:g}")
        ax.set_xlabel(r"$k_B T$")


def fig_coherence(spec: FigureSpec):
    table = read_table(spec.artifact("coherence.csv"), "coherence")
    fig, ax = plt.subplots(figsize=(6, 4))
    _coherence_axes(table, ax, "purity")
    ax.set(ylabel=r"tr $\rho_\infty^2$", title="attractor coherence")
    ax.legend(fontsize=8)
    return _save(fig, spec, "fig11_coherence")


def fig_three_level_comparison(spec: FigureSpec):
    table = read_table(spec.artifact("coherence.csv"), "coherence")
    if np.all(np.isnan(table.column("purity_three_level"))):
        raise ArtifactError(f"{table.path}: no three-level comparison data")
    fig, ax = plt.subplots(figsize=(6, 4))
    _coherence_axes(table, ax, "purity", label_prefix="full, ")
    _coherence_axes(table, ax, "purity_three_level", label_prefix="3-level, ")
    ax.set(ylabel=r"tr $\rho_\infty^2$",
           title="attractor coherence: full vs three-level")
    ax.legend(fontsize=7)
    return _save(fig, spec, "fig12_three_level")


FIGURES = {
    "2": fig_portrait,
    "4": fig_model_levels,
    "5": fig_sweep,
    "6": fig_splitting,
    "7": fig_tunnel,
    "8": fig_trajectory,
    "9": fig_timescales,
    "10": fig_occupation,
    "11": fig_coherence,
    "12": fig_three_level_comparison,
}

# panel aliases: the reference set letters multi-panel variants
_ALIASES = {"4a": "4", "4b": "4", "5a": "5", "5b": "5", "7a": "7", "7b": "7",
            "7c": "7", "8a": "8", "8b": "8", "9a": "9", "9b": "9",
            "10a": "10", "10b": "10", "10c": "10"}


def render(spec: FigureSpec) -> list[Path]:
    """Render one figure; returns the written paths.

    Raises ArtifactError for unknown identifiers, schema mismatches, missing
    columns, or empty inputs; no image file is produced in those cases.
    """
    fig_id = _ALIASES.get(spec.figure_id, spec.figure_id)
    if fig_id not in FIGURES:
        raise ArtifactError(
            f"unknown figure id {spec.figure_id!r}; known: "
            f"{sorted(FIGURES) + sorted(_ALIASES)}")
    return FIGURES[fig_id](spec)
