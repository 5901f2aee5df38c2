"""Closed-form three-level model of a singlet-doublet crossing.

A regular tunnel doublet with quasienergy splitting ``splitting`` meets a
chaotic singlet that shares the generalized parity of one doublet partner.
In the basis (spectator partner, coupled partner, chaotic state) the
quasienergy operator is

    base + [[0, 0,        0       ],
            [0, splitting, coupling],
            [0, coupling,  splitting + detuning]]

with ``detuning`` measuring the distance from the crossing.  The module
provides the spectrum and mixing angle, the mean energies of the mixed
states, the coherent population dynamics of an initially well-localized
state, a matrix-exponential propagation (kept as an independent oracle for
the closed forms), and a least-squares parameter extraction from numerically
computed quasienergy branches.

All quasienergy differences are taken relative to the spectator level, whose
global phase is unobservable.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

__all__ = [
    "ThreeStateParams", "eigensystem", "mean_energies",
    "tunneling_probabilities", "propagate_numerically", "beat_frequencies",
    "crossing_center", "CenterReport", "fit_from_spectrum", "FitResult",
]


@dataclass(frozen=True)
class ThreeStateParams:
    """Parameters of one singlet-doublet crossing.

    ``splitting`` and ``coupling`` must be positive; ``detuning`` is signed
    and sweeps through zero at the avoided crossing.  The mean energies keep
    their phase-space meaning: the chaotic value sits near the barrier top,
    far above the doublet pair.
    """

    base_quasienergy: float
    splitting: float            # doublet quasienergy splitting
    detuning: float             # chaotic-state detuning from the coupled partner
    coupling: float             # avoided-crossing half-gap at zero detuning
    mean_spectator: float = 0.0
    mean_regular: float = 0.0
    mean_chaotic: float = 0.0

    def __post_init__(self):
        if self.splitting <= 0:
            raise ValueError(f"splitting must be > 0, got {self.splitting}")
        if self.coupling <= 0:
            raise ValueError(f"coupling must be > 0, got {self.coupling}")

    def hierarchy_warnings(self, omega: float | None = None) -> list[str]:
        """Flags when the typical regime splitting << coupling << omega or the
        mean-energy separation is violated."""
        notes = []
        if not self.splitting < 0.1 * self.coupling:
            notes.append("doublet splitting is not small against the coupling")
        if omega is not None and not self.coupling < 0.1 * omega:
            notes.append("coupling is not small against the drive quantum")
        doublet_gap = abs(self.mean_regular - self.mean_spectator)
        chaotic_gap = abs(self.mean_chaotic - self.mean_regular)
        if chaotic_gap > 0 and not doublet_gap < 0.1 * chaotic_gap:
            notes.append("chaotic mean energy is not far above the doublet")
        return notes

    def replace_detuning(self, detuning: float) -> "ThreeStateParams":
        return ThreeStateParams(self.base_quasienergy, self.splitting, detuning,
                                self.coupling, self.mean_spectator,
                                self.mean_regular, self.mean_chaotic)


def eigensystem(p: ThreeStateParams):
    """Quasienergies (spectator, lower, upper) and the mixing angle.

    The mixing angle is continuous across the crossing: beta -> pi/2 far left
    (detuning -> -inf), pi/4 at zero detuning, 0 far right.
    """
    half_gap = 0.5 * np.hypot(p.detuning, 2.0 * p.coupling)
    center = p.base_quasienergy + p.splitting + 0.5 * p.detuning
    beta = 0.5 * np.arctan2(2.0 * p.coupling, p.detuning)
    return p.base_quasienergy, center - half_gap, center + half_gap, beta


def mean_energies(p: ThreeStateParams, beta: float):
    """Mean energies of the three levels; the mixed pair interpolates between
    the regular and chaotic values with weight sin^2(beta) (coupling-element
    contributions neglected)."""
    c2, s2 = np.cos(beta) ** 2, np.sin(beta) ** 2
    return (p.mean_spectator,
            p.mean_regular * c2 + p.mean_chaotic * s2,
            p.mean_regular * s2 + p.mean_chaotic * c2)


def tunneling_probabilities(p: ThreeStateParams, t):
    """Populations (P_right, P_left, P_chaotic) of a state started in the
    right well, from the closed-form interference of the three levels.

    ``t`` may be a scalar or an array.  Frequencies are quasienergy
    differences relative to the spectator level.
    """
    t = np.asarray(t, dtype=float)
    eps0, eps1, eps2, beta = eigensystem(p)
    f1, f2 = eps1 - eps0, eps2 - eps0
    c2, s2 = np.cos(beta) ** 2, np.sin(beta) ** 2
    beat = np.cos((f1 - f2) * t)
    p_right = 0.5 * (1.0 + np.cos(f1 * t) * c2 + np.cos(f2 * t) * s2
                     + (beat - 1.0) * c2 * s2)
    p_left = 0.5 * (1.0 - np.cos(f1 * t) * c2 - np.cos(f2 * t) * s2
                    + (beat - 1.0) * c2 * s2)
    p_chaotic = (1.0 - beat) * c2 * s2
    return p_right, p_left, p_chaotic


def propagate_numerically(p: ThreeStateParams, t):
    """Same populations by exact propagation of the 3x3 quasienergy matrix.

    Exists as the independent oracle for `tunneling_probabilities`; the two
    agree to 1e-10 over many beat periods.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    h = np.array([
        [0.0, 0.0, 0.0],
        [0.0, p.splitting, p.coupling],
        [0.0, p.coupling, p.splitting + p.detuning],
    ])
    vals, vecs = np.linalg.eigh(h)
    v0 = np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)
    right = np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)
    left = np.array([1.0, -1.0, 0.0]) / np.sqrt(2.0)
    chaotic = np.array([0.0, 0.0, 1.0])
    coeff = vecs.T @ v0
    phases = np.exp(-1j * np.outer(t, vals))       # (nt, 3)
    v_t = phases * coeff @ vecs.T                  # (nt, 3)
    p_r = np.abs(v_t @ right) ** 2
    p_l = np.abs(v_t @ left) ** 2
    p_c = np.abs(v_t @ chaotic) ** 2
    if p_r.size == 1:
        return float(p_r[0]), float(p_l[0]), float(p_c[0])
    return p_r, p_l, p_c


def beat_frequencies(p: ThreeStateParams, amplitude_floor: float = 1e-6,
                     merge_tol: float = 1e-9):
    """Distinct oscillation frequencies of the return probability with their
    cosine amplitudes, sorted by frequency.

    Nearby frequencies (within ``merge_tol`` relative) merge; components with
    amplitude below ``amplitude_floor`` are dropped.  At a generic working
    point three frequencies survive; where two of them degenerate the count
    falls to two, which marks the center of the crossing.
    """
    eps0, eps1, eps2, beta = eigensystem(p)
    c2, s2 = np.cos(beta) ** 2, np.sin(beta) ** 2
    comps = [(abs(eps1 - eps0), 0.5 * c2),
             (abs(eps2 - eps0), 0.5 * s2),
             (abs(eps2 - eps1), 0.5 * c2 * s2)]
    comps.sort()
    merged: list[list[float]] = []
    for freq, amp in comps:
        if amp < amplitude_floor:
            continue
        if merged and abs(freq - merged[-1][0]) <= merge_tol * max(freq, 1e-300):
            merged[-1][1] += amp
        else:
            merged.append([freq, amp])
    return [(f, a) for f, a in merged]


@dataclass(frozen=True)
class CenterReport:
    """Where the three-level beats collapse to two frequencies.

    ``located_detuning`` comes from a numeric scan of the beat count;
    ``degeneracy_detuning`` is the closed-form point where the two outer
    beat frequencies coincide, detuning = -2 * splitting; and
    ``stated_detuning`` restates the -splitting/2 value quoted in prior
    descriptions of the crossing center, kept for comparison.
    """

    located_detuning: float
    degeneracy_detuning: float
    stated_detuning: float


def crossing_center(p: ThreeStateParams, span: float = 10.0,
                    samples: int = 4001) -> CenterReport:
    """Scan the detuning for the point where the number of distinct beat
    frequencies drops from three to two.

    The scan covers ``detuning in [-span*coupling, span*coupling]``.  The
    drop happens where |eps1 - eps0| = |eps2 - eps0|, i.e. where the two
    mixed levels straddle the spectator symmetrically.
    """
    grid = np.linspace(-span * p.coupling, span * p.coupling, samples)
    eps0, eps1, eps2, _ = eigensystem(p)
    best, best_val = None, np.inf
    for dc in grid:
        q = p.replace_detuning(float(dc))
        e0, e1, e2, _ = eigensystem(q)
        mismatch = abs(abs(e1 - e0) - abs(e2 - e0))
        if mismatch < best_val:
            best, best_val = float(dc), mismatch
    return CenterReport(located_detuning=best,
                        degeneracy_detuning=-2.0 * p.splitting,
                        stated_detuning=-0.5 * p.splitting)


# ---------------------------------------------------------------------------
# parameter extraction from numerical quasienergy branches
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FitResult:
    params: ThreeStateParams       # at the detuning of the last grid point
    center_amplitude: float        # drive amplitude where detuning = 0
    detuning_slope: float          # d(detuning)/d(amplitude)
    residual: float                # rms misfit of the two branches

    def detuning_at(self, amplitude: float) -> float:
        return self.detuning_slope * (amplitude - self.center_amplitude)

    def params_at(self, amplitude: float) -> ThreeStateParams:
        return self.params.replace_detuning(self.detuning_at(amplitude))


def fit_from_spectrum(amplitudes, eps_spectator, eps_lower, eps_upper,
                      omega: float | None = None,
                      max_residual_over_gap: float = 0.1,
                      mean_energies_far=None) -> FitResult:
    """Least-squares extraction of (splitting, coupling, linear detuning map)
    from the two coupled quasienergy branches of a sweep window.

    ``eps_spectator`` supplies the reference level; differences are wrapped
    into the zone when ``omega`` is given.  The window must contain one
    avoided crossing: the fit refuses (ValueError) when the branch gap has no
    interior minimum or when the rms residual exceeds
    ``max_residual_over_gap`` times the fitted gap.

    ``mean_energies_far`` optionally passes (spectator, regular, chaotic)
    mean energies to store in the returned parameters.
    """
    f_arr = np.asarray(amplitudes, dtype=float)
    y1 = np.asarray(eps_lower, dtype=float) - np.asarray(eps_spectator, dtype=float)
    y2 = np.asarray(eps_upper, dtype=float) - np.asarray(eps_spectator, dtype=float)
    if omega is not None:
        y1 = y1 - omega * np.floor(y1 / omega + 0.5)
        y2 = y2 - omega * np.floor(y2 / omega + 0.5)
    lo = np.minimum(y1, y2)
    hi = np.maximum(y1, y2)
    gap = hi - lo
    i_min = int(np.argmin(gap))
    if i_min in (0, gap.size - 1):
        raise ValueError("window not described by three-state model: "
                         "no interior gap minimum (avoided crossing) found")

    delta0 = 0.5 * (lo[i_min] + hi[i_min])
    b0 = max(0.5 * gap[i_min], 1e-12)
    # the branch sum 2*Delta + detuning(F) is linear in F
    slope0 = np.polyfit(f_arr, lo + hi, 1)[0]
    f0 = f_arr[i_min]

    def model(theta):
        delta, b, slope, f_center = theta
        dc = slope * (f_arr - f_center)
        half = 0.5 * np.hypot(dc, 2.0 * b)
        mid = delta + 0.5 * dc
        return np.concatenate([mid - half - lo, mid + half - hi])

    fit = least_squares(model, x0=[delta0, b0, slope0, f0],
                        x_scale=[abs(delta0) + b0, b0, abs(slope0) + 1e-12,
                                 max(abs(f0), 1e-6)])
    delta, b, slope, f_center = fit.x
    if b < 0:
        b = -b
    residual = float(np.sqrt(np.mean(fit.fun**2)))
    if residual > max_residual_over_gap * 2.0 * b:
        raise ValueError(
            f"window not described by three-state model: rms residual "
            f"{residual:.3g} exceeds {max_residual_over_gap:.0%} of the gap "
            f"{2 * b:.3g}")
    if delta <= 0:
        warnings.warn("fitted splitting is non-positive; doublet order is "
                      "inverted in this window")
        delta = abs(delta) if delta != 0 else 1e-300
    kw = {}
    if mean_energies_far is not None:
        kw = dict(mean_spectator=mean_energies_far[0],
                  mean_regular=mean_energies_far[1],
                  mean_chaotic=mean_energies_far[2])
    params = ThreeStateParams(
        base_quasienergy=0.0, splitting=float(delta),
        detuning=float(slope * (f_arr[-1] - f_center)), coupling=float(b), **kw)
    return FitResult(params=params, center_amplitude=float(f_center),
                     detuning_slope=float(slope), residual=residual)
