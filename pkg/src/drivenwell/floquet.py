"""Floquet eigenproblem of the driven well in generalized-parity sectors.

The time-periodic Schroedinger equation is turned into the sideband matrix
eigenproblem

    H[(n,k),(n',k')] = (E_k - n*omega) d_nn' d_kk'
                       + (S/2) x_kk' (d_{n-1,n'} + d_{n+1,n'})

over sideband indices n in [-N_F, N_F] and static eigenstates k.  The
generalized parity (x -> -x, t -> t + pi/omega) acts as (-1)^(n+k) on the
index space and decouples the matrix into an even and an odd block.

Class structure: a physical Floquet state appears in the spectrum as copies
(eps + m*omega) whose index-space vectors are sideband translates of each
other; translates by odd m sit in the opposite parity block.  Consequently
every eigenvalue of one sector block that falls inside the Brillouin zone
[-omega/2, omega/2) is the canonical representative of a distinct state of
that parity, which makes representative selection a plain window filter.
The window filter replaces explicit duplicate removal: translated copies of
the same class are spaced 2*omega apart within a block, so at most one falls
inside the zone.

Caveat: states whose mean energy exceeds about (N_F - margin)*omega have no
clean zone copy inside the truncated sideband window and are not returned;
enlarge N_F to reach them.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
from scipy.optimize import brentq, minimize_scalar

from .basis import H0Spectrum
from .params import SystemParams

__all__ = [
    "FloquetState", "FloquetSpectrum", "CrossingReport", "SectorIndex",
    "brillouin_reduce", "assemble_floquet_matrix", "solve_sector",
    "solve_spectrum", "mean_energy", "sweep_amplitude", "detect_crossings",
    "classify_configuration", "localized_superpositions", "AmplitudeSweep",
]

EVEN, ODD = +1, -1


def brillouin_reduce(eps, omega: float):
    """Reduce quasienergies to the first Brillouin zone [-omega/2, omega/2)."""
    return eps - omega * np.floor(eps / omega + 0.5)


@dataclass(frozen=True)
class SectorIndex:
    """Index bookkeeping of one generalized-parity block of the sideband matrix."""

    sector: int                 # +1 even, -1 odd: sign of (-1)^(n+k)
    n_sidebands: int            # N_F
    num_states: int             # K
    n_of: np.ndarray            # sideband index per matrix row
    k_of: np.ndarray            # static state index per matrix row

    @classmethod
    def build(cls, num_states: int, n_sidebands: int, sector: int) -> "SectorIndex":
        if sector not in (EVEN, ODD):
            raise ValueError(f"sector must be +1 or -1, got {sector}")
        ns = np.arange(-n_sidebands, n_sidebands + 1)
        grid_n, grid_k = np.meshgrid(ns, np.arange(num_states), indexing="ij")
        keep = ((grid_n + grid_k) % 2 == 0) == (sector == EVEN)
        return cls(sector=sector, n_sidebands=n_sidebands, num_states=num_states,
                   n_of=grid_n[keep].astype(int), k_of=grid_k[keep].astype(int))

    @property
    def dim(self) -> int:
        return self.n_of.size


@dataclass(frozen=True)
class FloquetState:
    """One Floquet state in its canonical Brillouin-zone representation.

    ``components[n + n_sidebands, k]`` is the real coefficient of the static
    state k in sideband n.  The stored quasienergy, parity and components are
    mutually consistent: eps lies in the zone, the support of the components
    satisfies (-1)^(n+k) = parity, and the mean energy identity
    E = sum_n (eps + n*omega) * ||c_n||^2 holds with the stored arrays.
    """

    quasienergy: float
    parity: int
    omega: float
    components: np.ndarray      # (2*N_F+1, K)
    mean_energy: float

    @property
    def n_sidebands(self) -> int:
        return (self.components.shape[0] - 1) // 2

    @property
    def sideband_weights(self) -> np.ndarray:
        """||c_n||^2 for n = -N_F .. N_F."""
        return np.sum(self.components**2, axis=1)

    @property
    def edge_weight(self) -> float:
        """Weight in the outermost pair of sidebands; truncation diagnostic."""
        w = self.sideband_weights
        return float(w[0] + w[-1])

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.components**2)))

    def wavefunction_t0(self) -> np.ndarray:
        """Coefficients of |phi(0)> in the static eigenbasis (sum over sidebands)."""
        return self.components.sum(axis=0)

    def overlap(self, other: "FloquetState", max_shift: int = 1) -> float:
        """|<self|other>| in the extended space, maximized over small sideband
        translations of ``other`` (tolerates zone-edge relabeling).

        States with different sideband windows are compared on the common
        range.
        """
        a = self.components
        b = other.components
        nf = min(self.n_sidebands, other.n_sidebands)
        a = a[self.n_sidebands - nf:self.n_sidebands + nf + 1]
        b = b[other.n_sidebands - nf:other.n_sidebands + nf + 1]
        nb = 2 * nf + 1
        best = 0.0
        for m in range(-max_shift, max_shift + 1):
            if m == 0:
                val = float(np.abs(np.sum(a * b)))
            elif m > 0:
                val = float(np.abs(np.sum(a[m:] * b[:nb - m])))
            else:
                val = float(np.abs(np.sum(a[:nb + m] * b[-m:])))
            best = max(best, val)
        return best


@dataclass(frozen=True)
class FloquetSpectrum:
    """Floquet states of both parities at one driving amplitude, sorted by
    mean energy (quasienergies only order locally; mean energy orders
    globally)."""

    states: tuple[FloquetState, ...]
    params: SystemParams
    h0: H0Spectrum
    n_sidebands: int

    @property
    def quasienergies(self) -> np.ndarray:
        return np.array([s.quasienergy for s in self.states])

    @property
    def mean_energies(self) -> np.ndarray:
        return np.array([s.mean_energy for s in self.states])

    @property
    def parities(self) -> np.ndarray:
        return np.array([s.parity for s in self.states])

    def lowest(self, count: int) -> "FloquetSpectrum":
        if count > len(self.states):
            raise ValueError(f"requested {count} states, have {len(self.states)}")
        return FloquetSpectrum(self.states[:count], self.params, self.h0,
                               self.n_sidebands)


def assemble_floquet_matrix(spectrum: H0Spectrum, params: SystemParams,
                            n_sidebands: int, sector: int | None) -> np.ndarray:
    """Sideband matrix of the driven problem; one parity block, or the full
    matrix when ``sector`` is None (used for decoupling checks).

    The result is real symmetric.
    """
    if n_sidebands < 1:
        raise ValueError("n_sidebands must be >= 1")
    if sector is None:
        return _assemble(spectrum, params, _full_index(spectrum.size, n_sidebands))
    return _assemble(spectrum, params,
                     SectorIndex.build(spectrum.size, n_sidebands, sector))


def _full_index(num_states: int, n_sidebands: int) -> SectorIndex:
    ns = np.arange(-n_sidebands, n_sidebands + 1)
    grid_n, grid_k = np.meshgrid(ns, np.arange(num_states), indexing="ij")
    return SectorIndex(sector=0, n_sidebands=n_sidebands, num_states=num_states,
                       n_of=grid_n.ravel().astype(int), k_of=grid_k.ravel().astype(int))


def _assemble(spectrum: H0Spectrum, params: SystemParams,
              index: SectorIndex) -> np.ndarray:
    omega = params.drive_frequency
    half_s = 0.5 * params.drive_force
    h = np.zeros((index.dim, index.dim))
    diag = spectrum.energies[index.k_of] - index.n_of * omega
    h[np.arange(index.dim), np.arange(index.dim)] = diag
    neighbor = np.abs(index.n_of[:, None] - index.n_of[None, :]) == 1
    if half_s != 0.0:
        h += np.where(neighbor,
                      half_s * spectrum.x_elements[np.ix_(index.k_of, index.k_of)],
                      0.0)
    # guard against indexing bugs: the sector block must close under the
    # coupling, i.e. stay exactly symmetric
    if index.sector != 0 and not np.array_equal(h, h.T):
        raise AssertionError("sector matrix lost symmetry; index bug")
    return h


def solve_sector(spectrum: H0Spectrum, params: SystemParams, n_sidebands: int,
                 sector: int, matrix: np.ndarray | None = None) -> list[FloquetState]:
    """Eigenpairs of one parity block, reduced to canonical representatives.

    Returns the states of generalized parity ``sector`` whose zone copy lies
    inside the truncated sideband window, ordered by mean energy.
    """
    index = SectorIndex.build(spectrum.size, n_sidebands, sector)
    if matrix is None:
        matrix = _assemble(spectrum, params, index)
    elif matrix.shape != (index.dim, index.dim):
        raise ValueError(f"matrix shape {matrix.shape} does not match sector "
                         f"dimension {index.dim}")
    omega = params.drive_frequency
    try:
        vals, vecs = sla.eigh(matrix, subset_by_value=(-omega / 2 - 1e-300, omega / 2),
                              driver="evr")
    except sla.LinAlgError as exc:
        raise RuntimeError(f"sector eigensolver failed: {exc}")
    # LAPACK uses the half-open interval (vl, vu]; move an eigenvalue landing
    # exactly on +omega/2 to the lower edge to honor [-omega/2, omega/2)
    states = []
    ns = np.arange(-n_sidebands, n_sidebands + 1)
    for i in range(vals.size):
        eps = float(vals[i])
        vec = vecs[:, i]
        if eps >= omega / 2:  # boundary hit, reduce
            eps -= omega
            vec = _translate(vec, index, -1)
            warnings.warn("quasienergy on zone boundary; translated copy used")
        comp = np.zeros((2 * n_sidebands + 1, spectrum.size))
        comp[index.n_of + n_sidebands, index.k_of] = vec
        weights = np.sum(comp**2, axis=1)
        e_mean = float(np.sum((eps + ns * omega) * weights))
        states.append(FloquetState(quasienergy=eps, parity=sector, omega=omega,
                                   components=comp, mean_energy=e_mean))
    states.sort(key=lambda s: s.mean_energy)
    return states


def _translate(vec: np.ndarray, index: SectorIndex, m: int) -> np.ndarray:
    """Sideband translation n -> n + m of a sector vector (stays in sector for
    even m only; callers use |m| = 1 across the zone edge where the state
    re-enters through the other block)."""
    out = np.zeros_like(vec)
    lookup = {(n, k): i for i, (n, k) in enumerate(zip(index.n_of, index.k_of))}
    for i, (n, k) in enumerate(zip(index.n_of, index.k_of)):
        j = lookup.get((n + m, k))
        if j is not None:
            out[j] = vec[i]
    return out


def solve_spectrum(spectrum: H0Spectrum, params: SystemParams,
                   n_sidebands: int = 16) -> FloquetSpectrum:
    """Both parity sectors, merged and ordered by mean energy."""
    states = solve_sector(spectrum, params, n_sidebands, EVEN) \
        + solve_sector(spectrum, params, n_sidebands, ODD)
    states.sort(key=lambda s: s.mean_energy)
    return FloquetSpectrum(tuple(states), params, spectrum, n_sidebands)


def mean_energy(state: FloquetState, omega: float | None = None) -> float:
    """Mean energy from the Fourier weights, E = sum_n (eps + n w) ||c_n||^2.

    Raises on unnormalized input; class-translation invariant.
    """
    if omega is None:
        omega = state.omega
    norm = state.norm()
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"state norm {norm} differs from 1; cannot form mean energy")
    ns = np.arange(-state.n_sidebands, state.n_sidebands + 1)
    return float(np.sum((state.quasienergy + ns * omega) * state.sideband_weights))


# ---------------------------------------------------------------------------
# amplitude sweeps and crossing detection
# ---------------------------------------------------------------------------

@dataclass
class AmplitudeSweep:
    """Continuity-labeled Floquet spectra over a grid of driving amplitudes.

    ``labels[i]`` maps state positions of ``spectra[i]`` to persistent integer
    labels assigned at the first grid point (ordered there by mean energy).
    ``gaps`` lists grid intervals where continuity could not be established
    even after refinement.
    """

    amplitudes: np.ndarray
    spectra: list[FloquetSpectrum]
    labels: list[np.ndarray]
    gaps: list[tuple[float, float]] = field(default_factory=list)

    def branch(self, label: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
        """(F, quasienergy, mean_energy, parity) along one labeled branch."""
        f_vals, eps, energy, parity = [], [], [], None
        for fa, spec, lab in zip(self.amplitudes, self.spectra, self.labels):
            hits = np.where(lab == label)[0]
            if hits.size != 1:
                continue
            st = spec.states[hits[0]]
            f_vals.append(fa)
            eps.append(st.quasienergy)
            energy.append(st.mean_energy)
            parity = st.parity
        return np.array(f_vals), np.array(eps), np.array(energy), parity

    def state(self, i_grid: int, label: int) -> FloquetState:
        hits = np.where(self.labels[i_grid] == label)[0]
        if hits.size != 1:
            raise KeyError(f"label {label} absent at grid point {i_grid}")
        return self.spectra[i_grid].states[hits[0]]


@dataclass(frozen=True)
class CrossingReport:
    """A located quasienergy crossing.

    kind 'avoided': ``amplitude`` is the gap minimum, ``gap`` its size.
    kind 'exact': ``amplitude`` is the sign change of the wrapped quasienergy
    difference, bracketed to ``bracket`` (relative width 1e-6).
    """

    kind: str
    amplitude: float
    labels: tuple[int, int]
    parities: tuple[int, int]
    gap: float | None = None
    bracket: tuple[float, float] | None = None


def classify_configuration(reports, avoided: CrossingReport) -> str:
    """Crossing-configuration class of one avoided crossing.

    'restoring' when an exact crossing involving one of the avoided pair's
    partners accompanies it in the detected set (the doublet order is
    restored on passing through); 'reversing' otherwise (the order within
    the doublet flips across the crossing and no exact crossing occurs).
    """
    if avoided.kind != "avoided":
        raise ValueError("configuration is defined for avoided crossings")
    pair = set(avoided.labels)
    for r in reports:
        if r.kind == "exact" and pair & set(r.labels):
            return "restoring"
    return "reversing"


def sweep_amplitude(spectrum: H0Spectrum, params: SystemParams,
                    amplitudes, n_sidebands: int = 16, track_lowest: int = 24,
                    min_overlap: float = 0.5, max_refine_depth: int = 6,
                    workers: int = 1) -> AmplitudeSweep:
    """Solve the Floquet problem along a monotone amplitude grid and label the
    states continuously by maximal component overlap between neighbors.

    Only the ``track_lowest`` states by mean energy at each point enter the
    assignment.  Where the best overlap falls below ``min_overlap`` the grid
    is refined locally by bisection up to ``max_refine_depth`` levels; if the
    ambiguity persists a continuity gap is recorded.  Grid points are
    independent; ``workers`` > 1 solves them in a thread pool (the eigensolver
    releases the interpreter lock).
    """
    amplitudes = np.asarray(amplitudes, dtype=float)
    if amplitudes.size < 1 or np.any(np.diff(amplitudes) <= 0) and amplitudes.size > 1:
        raise ValueError("amplitude grid must be non-empty and strictly increasing")

    def solve_at(f_val: float) -> FloquetSpectrum:
        spec = solve_spectrum(spectrum, params.replace_amplitude(f_val), n_sidebands)
        return FloquetSpectrum(spec.states[:track_lowest], spec.params, spectrum,
                               n_sidebands)

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            spectra = list(pool.map(solve_at, amplitudes))
    else:
        spectra = [solve_at(f) for f in amplitudes]
    labels = [np.arange(len(spectra[0].states))]
    gaps: list[tuple[float, float]] = []

    for i in range(1, len(spectra)):
        lab, ok = _match_labels(spectra[i - 1], labels[i - 1], spectra[i], min_overlap)
        if not ok:
            lab, ok = _refine_match(solve_at, amplitudes[i - 1], spectra[i - 1],
                                    labels[i - 1], amplitudes[i], spectra[i],
                                    min_overlap, max_refine_depth)
            if not ok:
                gaps.append((float(amplitudes[i - 1]), float(amplitudes[i])))
        labels.append(lab)
    return AmplitudeSweep(amplitudes, spectra, labels, gaps)


def _match_labels(prev: FloquetSpectrum, prev_labels: np.ndarray,
                  cur: FloquetSpectrum, min_overlap: float):
    """Assign previous labels to current states by maximal overlap (optimal
    one-to-one assignment, parity respected)."""
    from scipy.optimize import linear_sum_assignment

    n_prev, n_cur = len(prev.states), len(cur.states)
    ov = np.zeros((n_prev, n_cur))
    for a, sa in enumerate(prev.states):
        for b, sb in enumerate(cur.states):
            if sa.parity == sb.parity:
                ov[a, b] = sa.overlap(sb, max_shift=0)
            else:
                ov[a, b] = sa.overlap(sb, max_shift=1)  # zone-edge relabeling
    row, col = linear_sum_assignment(-ov)
    lab = np.full(n_cur, -1, dtype=int)
    worst = 1.0
    for a, b in zip(row, col):
        lab[b] = prev_labels[a]
        worst = min(worst, ov[a, b])
    next_label = int(max(prev_labels.max(), lab.max())) + 1
    for b in range(n_cur):
        if lab[b] < 0:
            lab[b] = next_label
            next_label += 1
    return lab, worst >= min_overlap


def _refine_match(solve_at, f_lo, spec_lo, labels_lo, f_hi, spec_hi,
                  min_overlap, depth):
    """Bisect [f_lo, f_hi] until neighboring overlaps clear the threshold."""
    if depth == 0:
        lab, _ = _match_labels(spec_lo, labels_lo, spec_hi, min_overlap)
        return lab, False
    f_mid = 0.5 * (f_lo + f_hi)
    spec_mid = solve_at(f_mid)
    lab_mid, ok1 = _match_labels(spec_lo, labels_lo, spec_mid, min_overlap)
    if not ok1:
        lab_mid, ok1 = _refine_match(solve_at, f_lo, spec_lo, labels_lo, f_mid,
                                     spec_mid, min_overlap, depth - 1)
    lab_hi, ok2 = _match_labels(spec_mid, lab_mid, spec_hi, min_overlap)
    if not ok2:
        lab_hi, ok2 = _refine_match(solve_at, f_mid, spec_mid, lab_mid, f_hi,
                                    spec_hi, min_overlap, depth - 1)
    return lab_hi, ok1 and ok2


def _wrap(delta: np.ndarray, omega: float) -> np.ndarray:
    return delta - omega * np.floor(delta / omega + 0.5)


def detect_crossings(sweep: AmplitudeSweep, gap_threshold: float | None = None,
                     refine: bool = True) -> list[CrossingReport]:
    """Locate avoided crossings (same parity) and exact crossings (opposite
    parity) among the labeled branches of a sweep.

    Avoided crossings are interior local minima of the wrapped quasienergy
    gap; with ``gap_threshold`` set, only minima below it are reported (it
    defaults to a tenth of the drive frequency).  Exact crossings are sign
    changes of the wrapped difference, refined by bisection on the amplitude
    to a relative width of 1e-6.
    """
    omega = sweep.spectra[0].params.drive_frequency
    if gap_threshold is None:
        gap_threshold = 0.1 * omega
    all_labels = sorted(set(np.concatenate(sweep.labels).tolist()))
    reports: list[CrossingReport] = []
    h0 = sweep.spectra[0].h0
    n_sidebands = sweep.spectra[0].n_sidebands
    params = sweep.spectra[0].params

    branches = {}
    for lab in all_labels:
        f, eps, energy, parity = sweep.branch(lab)
        if f.size == sweep.amplitudes.size and parity is not None:
            branches[lab] = (eps, parity)

    labs = sorted(branches)
    for ia, la in enumerate(labs):
        eps_a, par_a = branches[la]
        for lb in labs[ia + 1:]:
            eps_b, par_b = branches[lb]
            diff = _wrap(eps_a - eps_b, omega)
            if par_a == par_b:
                gap = np.abs(diff)
                for i in range(1, gap.size - 1):
                    if gap[i] < gap[i - 1] and gap[i] <= gap[i + 1] \
                            and gap[i] < gap_threshold:
                        f_star, g_star = _refine_avoided(
                            sweep, i, la, lb, h0, params, n_sidebands) if refine \
                            else (float(sweep.amplitudes[i]), float(gap[i]))
                        reports.append(CrossingReport(
                            kind="avoided", amplitude=f_star, labels=(la, lb),
                            parities=(par_a, par_b), gap=g_star))
            else:
                # exclude zone-boundary jumps masquerading as sign changes
                for i in range(diff.size - 1):
                    if diff[i] == 0.0 or diff[i] * diff[i + 1] >= 0:
                        continue
                    if abs(diff[i]) + abs(diff[i + 1]) > omega / 2:
                        continue
                    if refine:
                        f_star, bracket = _refine_exact(
                            sweep, i, la, lb, h0, params, n_sidebands)
                    else:
                        f_star = float(0.5 * (sweep.amplitudes[i]
                                              + sweep.amplitudes[i + 1]))
                        bracket = (float(sweep.amplitudes[i]),
                                   float(sweep.amplitudes[i + 1]))
                    reports.append(CrossingReport(
                        kind="exact", amplitude=f_star, labels=(la, lb),
                        parities=(par_a, par_b), bracket=bracket))
    reports.sort(key=lambda r: r.amplitude)
    return reports


def _tracked_pair(sweep, i_grid, la, lb, h0, params, n_sidebands):
    """Quasienergy difference of two labeled branches as a function of F,
    re-identifying the states at off-grid amplitudes by overlap with the
    nearest grid representatives.

    The two states are identified jointly (optimal one-to-one assignment):
    near an avoided crossing both references overlap the same hybridized
    eigenstate comparably, and independent argmax picks could collapse onto
    one state, faking a zero gap.
    """
    from scipy.optimize import linear_sum_assignment

    ref_a = sweep.state(i_grid, la)
    ref_b = sweep.state(i_grid, lb)
    omega = params.drive_frequency

    def eval_diff(f_val: float) -> float:
        spec = solve_spectrum(h0, params.replace_amplitude(f_val), n_sidebands)
        scores = np.full((2, len(spec.states)), -1.0)
        for j, s in enumerate(spec.states):
            if s.parity == ref_a.parity:
                scores[0, j] = ref_a.overlap(s)
            if s.parity == ref_b.parity:
                scores[1, j] = ref_b.overlap(s)
        rows, cols = linear_sum_assignment(-scores)
        picked = {r: spec.states[c] for r, c in zip(rows, cols)}
        return float(_wrap(np.array(picked[0].quasienergy
                                    - picked[1].quasienergy), omega))

    return eval_diff


def _refine_avoided(sweep, i_min, la, lb, h0, params, n_sidebands):
    f_grid = sweep.amplitudes
    lo, hi = f_grid[max(i_min - 1, 0)], f_grid[min(i_min + 1, f_grid.size - 1)]
    diff = _tracked_pair(sweep, i_min, la, lb, h0, params, n_sidebands)
    # the gap is quadratically flat around its minimum; a coarse location
    # tolerance already pins the minimal gap value to rounding
    res = minimize_scalar(lambda f: abs(diff(f)), bounds=(lo, hi),
                          method="bounded",
                          options={"xatol": 1e-3 * (hi - lo)})
    return float(res.x), float(abs(res.fun))


def _refine_exact(sweep, i_left, la, lb, h0, params, n_sidebands):
    lo = float(sweep.amplitudes[i_left])
    hi = float(sweep.amplitudes[i_left + 1])
    diff = _tracked_pair(sweep, i_left, la, lb, h0, params, n_sidebands)
    xtol = 1e-6 * max(abs(hi), 1e-12)
    f_star = brentq(diff, lo, hi, xtol=xtol)
    return float(f_star), (float(f_star - xtol), float(f_star + xtol))


# ---------------------------------------------------------------------------
# localized superpositions of a tunnel doublet
# ---------------------------------------------------------------------------

def localized_superpositions(even_state: FloquetState, odd_state: FloquetState,
                             x_elements: np.ndarray):
    """Right/left localized combinations (|even> +- |odd>)/sqrt(2) at t = 0.

    The relative sign is fixed so the first return value maximizes <x> (the
    right well).  Returns two unit-norm coefficient vectors in the static
    eigenbasis.  Raises if the pair has equal parities or is not localized
    (|<x>| below 5% of the well position scale).
    """
    if even_state.parity == odd_state.parity:
        raise ValueError("need one state of each generalized parity")
    u_even = even_state.wavefunction_t0()
    u_odd = odd_state.wavefunction_t0()
    u_even = u_even / np.linalg.norm(u_even)
    u_odd = u_odd / np.linalg.norm(u_odd)
    cross = float(u_even @ x_elements @ u_odd)
    scale = np.abs(x_elements).max()
    if abs(cross) < 0.05 * scale:
        raise ValueError(
            f"states not well localized: |<even|x|odd>| = {abs(cross):.3g} "
            f"against scale {scale:.3g}")
    sign = 1.0 if cross > 0 else -1.0
    right = (u_even + sign * u_odd) / np.sqrt(2.0)
    left = (u_even - sign * u_odd) / np.sqrt(2.0)
    return right / np.linalg.norm(right), left / np.linalg.norm(left)
