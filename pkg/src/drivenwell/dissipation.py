"""Floquet-Markov master equation for the driven well in an Ohmic bath.

The reduced density matrix is expanded in the time-periodic parts of the
Floquet states, sigma[a, b] = <phi_a(t)|rho|phi_b(t)>.  To second order in
the bilinear system-bath coupling (weak damping, memoryless bath) the
equation of motion has time-periodic coefficients built from the sideband
components of the position operator,

    X[a, b, n] = sum_m  <c^a_m| x |c^b_{m-n}>,          X[a,b,n] = X[b,a,-n]*

weighted by the bath correlation function

    N(eps) = gamma * eps * n_th(eps),   n_th(eps) = 1/(exp(eps/kT) - 1),

evaluated at the quasienergy differences shifted by multiples of the drive
quantum.  Averaging the coefficients over one driving period (a moderate
rotating-wave step, harmless when dissipation acts slowly compared with the
drive) leaves the time-independent kernel

    L[a,b,a',b'] = sum_n (N[a,a',n] + N[b,b',n]) X[a,a',n] X[b',b,-n]
                   - d_{b,b'} sum_{e,n} N[e,a',n] X[a,e,-n] X[e,a',n]
                   - d_{a,a'} sum_{e,n} N[e,b',n] X[b',e,-n] X[e,b,n]

whose structure preserves trace and Hermiticity identically; the full
periodic generator is kept alongside and its period average reproduces the
kernel to rounding, which pins down the operator ordering independently of
any printed form.

Complete positivity is *not* guaranteed by this approximation chain;
negative density-matrix eigenvalues beyond tolerance raise a warning, never
an error.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .floquet import FloquetSpectrum
from .params import BathParams

__all__ = [
    "bath_weight", "XCoefficients", "x_fourier_coefficients",
    "DissipativeKernel", "assemble_rwa_kernel", "PeriodicGenerator",
    "assemble_periodic_generator", "Trajectory", "propagate",
    "decoherence_time", "relaxation_time", "asymptotic_state", "purity",
    "restrict_to_three_levels", "CrossingTriple", "localized_triple",
]


def bath_weight(eps, bath: BathParams):
    """Golden-rule weight N(eps) of an Ohmic bath, per unit squared coupling
    matrix element.

    Positive arguments describe absorption from the bath (vanishes at zero
    temperature), negative ones emission; the removable singularity at zero
    is filled with its limit gamma*kT.  Satisfies the detailed-balance ratio
    N(-eps)/N(eps) = exp(eps/kT).
    """
    eps = np.asarray(eps, dtype=float)
    gamma, kt = bath.damping, bath.temperature
    if kt == 0.0:
        out = np.where(eps < 0, -gamma * eps, 0.0)
        return out if out.ndim else float(out)
    x = eps / kt
    small = np.abs(x) < 1e-8
    with np.errstate(over="ignore", under="ignore"):
        pos = np.exp(-np.clip(x, 0.0, None))
        n_pos = pos / np.where(1.0 - pos == 0.0, 1.0, 1.0 - pos)   # x > 0
        neg = np.exp(np.clip(x, None, 0.0))
        n_neg = 1.0 / np.where(neg - 1.0 == 0.0, -1.0, neg - 1.0)  # x < 0
    n_th = np.where(x > 0, n_pos, n_neg)
    out = np.where(small, gamma * kt * (1.0 - 0.5 * x), gamma * eps * n_th)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# sideband components of the position operator in the Floquet basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class XCoefficients:
    """X[a, b, n] for n in [-2*N_F, 2*N_F] over the retained Floquet states.

    The identity X[a,b,n] = conj(X[b,a,-n]) holds exactly by construction;
    generalized parity makes X[a,b,n] vanish unless (-1)^n p_a p_b = -1.
    """

    values: np.ndarray          # (M, M, 4*N_F+1) complex
    quasienergies: np.ndarray   # (M,)
    parities: np.ndarray        # (M,)
    mean_energies: np.ndarray   # (M,)
    omega: float
    n_sidebands: int            # N_F of the underlying states

    @property
    def size(self) -> int:
        return self.values.shape[0]

    @property
    def shifts(self) -> np.ndarray:
        return np.arange(-2 * self.n_sidebands, 2 * self.n_sidebands + 1)

    def tail_weight(self) -> float:
        """Largest |X| on the outermost shifts; must be negligible for the
        convolution support to be complete at this truncation."""
        return float(np.max(np.abs(self.values[:, :, [0, -1]])))

    def at_time(self, t: float) -> np.ndarray:
        """Position matrix in the rotating Floquet basis,
        X(t) = sum_n exp(i n w t) X[:, :, n]; Hermitian for real t."""
        phases = np.exp(1j * self.omega * t * self.shifts)
        return self.values @ phases

    def restricted(self, indices) -> "XCoefficients":
        idx = np.asarray(indices, dtype=int)
        return XCoefficients(self.values[np.ix_(idx, idx)].copy(),
                             self.quasienergies[idx].copy(),
                             self.parities[idx].copy(),
                             self.mean_energies[idx].copy(),
                             self.omega, self.n_sidebands)


def x_fourier_coefficients(states, x_elements: np.ndarray) -> XCoefficients:
    """Assemble the X coefficients of a list of Floquet states.

    All states must share one (K, N_F) truncation and drive frequency.
    """
    states = list(states)
    if not states:
        raise ValueError("need at least one state")
    nf = states[0].n_sidebands
    omega = states[0].omega
    num_k = states[0].components.shape[1]
    for s in states:
        if s.n_sidebands != nf or s.components.shape[1] != num_k \
                or s.omega != omega:
            raise ValueError("states carry mismatched truncations")
    comps = np.stack([s.components for s in states])          # (M, 2nf+1, K)
    moved = comps @ x_elements.T                              # x applied per sideband
    m_dim = len(states)
    nbands = 2 * nf + 1
    vals = np.zeros((m_dim, m_dim, 4 * nf + 1))
    for n in range(0, 2 * nf + 1):
        # X[a,b,n] = sum_m c^a_m . (x c^b)_{m-n}
        block = np.einsum("amk,bmk->ab", comps[:, n:, :],
                          moved[:, :nbands - n, :])
        if n == 0:
            block = 0.5 * (block + block.T)    # exact X[a,b,0] = X[b,a,0]
        vals[:, :, 2 * nf + n] = block
        if n > 0:
            vals[:, :, 2 * nf - n] = block.T   # X[b,a,-n] = X[a,b,n] (real)
    return XCoefficients(values=vals.astype(complex),
                         quasienergies=np.array([s.quasienergy for s in states]),
                         parities=np.array([s.parity for s in states]),
                         mean_energies=np.array([s.mean_energy for s in states]),
                         omega=omega, n_sidebands=nf)


def _bath_weights_table(x: XCoefficients, bath: BathParams) -> np.ndarray:
    """N[a, b, n] = N(eps_a - eps_b + n*omega) on the convolution support."""
    eps = x.quasienergies
    grid = eps[:, None, None] - eps[None, :, None] \
        + x.shifts[None, None, :] * x.omega
    return bath_weight(grid, bath)


# ---------------------------------------------------------------------------
# time-independent kernel (period-averaged) and periodic generator
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DissipativeKernel:
    """Rank-4 dissipative coefficients plus the coherent quasienergy part.

    The generator acts as
        sigma_dot[a,b] = -i (eps_a - eps_b) sigma[a,b]
                         + sum_{a'b'} L[a,b,a',b'] sigma[a',b'].
    """

    tensor: np.ndarray          # (M, M, M, M) complex
    quasienergies: np.ndarray
    parities: np.ndarray
    mean_energies: np.ndarray
    bath: BathParams
    omega: float

    @property
    def size(self) -> int:
        return self.quasienergies.size

    def apply(self, sigma: np.ndarray) -> np.ndarray:
        coherent = -1j * (self.quasienergies[:, None]
                          - self.quasienergies[None, :]) * sigma
        return coherent + np.einsum("abcd,cd->ab", self.tensor, sigma)

    def superoperator(self) -> np.ndarray:
        """Dense (M^2, M^2) matrix over row-major vec(sigma)."""
        m = self.size
        eye = np.eye(m)
        coherent = -1j * np.einsum("ac,bd->abcd",
                                   np.diag(self.quasienergies), eye) \
            + 1j * np.einsum("ac,bd->abcd", eye, np.diag(self.quasienergies))
        return (coherent + self.tensor).reshape(m * m, m * m)

    def direct_rates(self) -> np.ndarray:
        """W[a, a'] = L[a,a,a',a'], the golden-rule rate a' -> a (a != a')."""
        m = self.size
        w = np.real(np.einsum("aabb->ab", self.tensor)).copy()
        np.fill_diagonal(w, 0.0)
        return w


def assemble_rwa_kernel(x: XCoefficients, bath: BathParams,
                        crude: bool = False) -> DissipativeKernel:
    """Period-averaged (moderately rotating-wave) dissipative kernel.

    With ``crude=True`` only the population-transfer and coherence-dephasing
    elements survive (the fully secular variant kept for comparison); the
    default retains every period-average-surviving element.
    """
    n_x = _bath_weights_table(x, bath)
    xv = x.values
    xc = xv.conj()
    nx = n_x * xv
    nxc = n_x * xc
    gain = np.einsum("acn,bdn->abcd", nx, xc) \
        + np.einsum("acn,bdn->abcd", xv, nxc)
    loss_row = np.einsum("ean,ecn->ac", xc, nx)    # sum_e conj(X[e,a,n]) N[e,c,n] X[e,c,n]
    loss_col = np.einsum("edn,ebn->db", nxc, xv)
    m = x.size
    eye = np.eye(m)
    tensor = gain \
        - np.einsum("ac,bd->abcd", loss_row, eye) \
        - np.einsum("db,ac->abcd", loss_col, eye)
    if crude:
        keep = np.zeros((m, m, m, m), dtype=bool)
        a, b = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
        keep[a, b, a, b] = True          # dephasing of each coherence
        keep[a, a, b, b] = True          # population transfer
        tensor = np.where(keep, tensor, 0.0)
    return DissipativeKernel(tensor=tensor, quasienergies=x.quasienergies,
                             parities=x.parities,
                             mean_energies=x.mean_energies, bath=bath,
                             omega=x.omega)


@dataclass(frozen=True)
class PeriodicGenerator:
    """Full time-periodic Born-Markov generator, before period averaging.

    At any time t the action is assembled from the Hermitian position matrix
    X(t) and its bath-filtered counterpart Y(t) = sum_n e^{i n w t} N[.,.,n]
    X[.,.,n]:

        sigma_dot = -i[diag(eps), sigma]
                    + Y s X + X s Y^dag - X Y s - s Y^dag X.
    """

    x: XCoefficients
    bath: BathParams
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", _bath_weights_table(self.x, self.bath))

    @property
    def size(self) -> int:
        return self.x.size

    @property
    def omega(self) -> float:
        return self.x.omega

    @property
    def quasienergies(self) -> np.ndarray:
        return self.x.quasienergies

    def _matrices_at(self, t: float):
        phases = np.exp(1j * self.omega * t * self.x.shifts)
        x_t = self.x.values @ phases
        y_t = (self.weights * self.x.values) @ phases
        return x_t, y_t

    def apply(self, sigma: np.ndarray, t: float) -> np.ndarray:
        eps = self.x.quasienergies
        x_t, y_t = self._matrices_at(t)
        yh = y_t.conj().T
        coherent = -1j * (eps[:, None] - eps[None, :]) * sigma
        return coherent + y_t @ sigma @ x_t + x_t @ sigma @ yh \
            - x_t @ y_t @ sigma - sigma @ yh @ x_t

    def superoperator_at(self, t: float) -> np.ndarray:
        m = self.size
        eps = self.x.quasienergies
        x_t, y_t = self._matrices_at(t)
        yh = y_t.conj().T
        eye = np.eye(m)
        sup = -1j * (np.kron(np.diag(eps), eye) - np.kron(eye, np.diag(eps)))
        sup = sup + np.kron(y_t, x_t.T) + np.kron(x_t, yh.T) \
            - np.kron(x_t @ y_t, eye) - np.kron(eye, (yh @ x_t).T)
        return sup

    def period_average(self, samples: int | None = None) -> np.ndarray:
        """Uniform average of the superoperator over one driving period.

        With at least 4*N_F + 2 samples the discrete average annihilates
        every surviving harmonic exactly, so this reproduces the kernel
        superoperator to rounding.
        """
        if samples is None:
            samples = 4 * self.x.n_sidebands + 2
        period = 2.0 * np.pi / self.omega
        acc = np.zeros((self.size**2, self.size**2), dtype=complex)
        for j in range(samples):
            acc += self.superoperator_at(j * period / samples)
        return acc / samples


def assemble_periodic_generator(x: XCoefficients,
                                bath: BathParams) -> PeriodicGenerator:
    return PeriodicGenerator(x=x, bath=bath)


# ---------------------------------------------------------------------------
# propagation
# ---------------------------------------------------------------------------

@dataclass
class Trajectory:
    """Density-matrix history on a time grid, with bookkeeping of the
    conservation-law drifts accumulated during propagation."""

    times: np.ndarray           # (T,)
    sigmas: np.ndarray          # (T, M, M) complex
    trace_drift: float
    hermiticity_drift: float

    def purity(self) -> np.ndarray:
        return np.real(np.einsum("tab,tba->t", self.sigmas, self.sigmas))

    def populations(self) -> np.ndarray:
        return np.real(np.einsum("taa->ta", self.sigmas))

    def expectation(self, vector: np.ndarray) -> np.ndarray:
        """<v|sigma|v> along the trajectory for a coefficient vector."""
        return np.real(np.einsum("a,tab,b->t", vector.conj(), self.sigmas,
                                 vector))


def _check_initial(sigma0: np.ndarray):
    if np.max(np.abs(sigma0 - sigma0.conj().T)) > 1e-9:
        raise ValueError("initial density matrix is not Hermitian")
    if abs(np.trace(sigma0).real - 1.0) > 1e-9:
        raise ValueError("initial density matrix must have unit trace")


def _monitor_positivity(sigma: np.ndarray, tol: float = 1e-6):
    low = float(np.min(np.linalg.eigvalsh(0.5 * (sigma + sigma.conj().T))))
    if low < -tol:
        warnings.warn(f"density matrix developed negative weight {low:.3e}; "
                      "Born-Markov kernel is not completely positive")


def propagate(sigma0: np.ndarray, generator, times,
              steps_per_period: int = 64) -> Trajectory:
    """Evolve a density matrix and sample it at the requested times.

    For a `DissipativeKernel` the time-independent superoperator is advanced
    with matrix exponentials of the needed step sizes (cached); this covers
    arbitrarily long horizons at fixed cost.  For a `PeriodicGenerator` a
    classic fixed-step fourth-order Runge-Kutta scheme with
    ``steps_per_period`` substeps per driving period integrates between the
    samples; sampling times are approached exactly.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0 or np.any(np.diff(times) < 0):
        raise ValueError("times must be a non-decreasing 1d array")
    _check_initial(sigma0)
    if isinstance(generator, DissipativeKernel):
        traj = _propagate_kernel(sigma0, generator, times)
    elif isinstance(generator, PeriodicGenerator):
        traj = _propagate_periodic(sigma0, generator, times, steps_per_period)
    else:
        raise TypeError(f"unsupported generator type {type(generator)!r}")
    _monitor_positivity(traj.sigmas[-1])
    return traj


def _propagate_kernel(sigma0, kernel: DissipativeKernel, times) -> Trajectory:
    m = kernel.size
    sup = kernel.superoperator()
    steps = {}
    vec = sigma0.astype(complex).reshape(-1)
    out = np.empty((times.size, m, m), dtype=complex)
    t_now = float(times[0])
    if t_now != 0.0:
        vec = _expm_apply(sup, t_now, steps) @ vec
    out[0] = vec.reshape(m, m)
    for i in range(1, times.size):
        dt = float(times[i] - times[i - 1])
        if dt > 0:
            vec = _expm_apply(sup, dt, steps) @ vec
        out[i] = vec.reshape(m, m)
    return _finish_trajectory(times, out)


def _expm_apply(sup, dt, cache):
    key = round(dt, 15)
    if key not in cache:
        cache[key] = sla.expm(sup * dt)
    return cache[key]


def _propagate_periodic(sigma0, gen: PeriodicGenerator, times,
                        steps_per_period) -> Trajectory:
    if steps_per_period < 4:
        raise ValueError("steps_per_period too small")
    h_nominal = (2.0 * np.pi / gen.omega) / steps_per_period
    sigma = sigma0.astype(complex)
    out = np.empty((times.size, gen.size, gen.size), dtype=complex)
    t_now = 0.0
    for i, t_target in enumerate(times):
        span = t_target - t_now
        if span > 0:
            n_steps = max(1, int(np.ceil(span / h_nominal - 1e-12)))
            h = span / n_steps
            if h < 1e-15 * max(t_target, 1.0):
                raise RuntimeError("step size underflow while approaching "
                                   f"t = {t_target}")
            for _ in range(n_steps):
                k1 = gen.apply(sigma, t_now)
                k2 = gen.apply(sigma + 0.5 * h * k1, t_now + 0.5 * h)
                k3 = gen.apply(sigma + 0.5 * h * k2, t_now + 0.5 * h)
                k4 = gen.apply(sigma + h * k3, t_now + h)
                sigma = sigma + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
                t_now += h
            t_now = float(t_target)
        out[i] = sigma
    return _finish_trajectory(np.asarray(times, dtype=float), out)


def _finish_trajectory(times, sigmas) -> Trajectory:
    traces = np.einsum("taa->t", sigmas)
    trace_drift = float(np.max(np.abs(traces - 1.0)))
    herm_drift = float(np.max(np.abs(sigmas - sigmas.conj().transpose(0, 2, 1))))
    return Trajectory(times=times, sigmas=sigmas, trace_drift=trace_drift,
                      hermiticity_drift=herm_drift)


# ---------------------------------------------------------------------------
# time scales and the asymptotic state
# ---------------------------------------------------------------------------

def decoherence_time(kernel: DissipativeKernel, sigma0: np.ndarray,
                     beat_period: float, threshold: float = 0.9,
                     max_beats: int = 200_000) -> float:
    """Coherence-decay time 1 / [(tr rho^2(0) - tr rho^2(t)) / t].

    The horizon t is the smallest whole number of chaotic-beat periods at
    which the purity has fallen to ``threshold`` (the purity decays stepwise,
    so fractional horizons would alias the beat).  Raises RuntimeError when
    the threshold is not reached within ``max_beats`` beats.
    """
    _check_initial(sigma0)
    m = kernel.size
    sup = kernel.superoperator()
    step = sla.expm(sup * beat_period)
    vec = sigma0.astype(complex).reshape(-1)
    p0 = float(np.real(np.trace(sigma0 @ sigma0)))
    stride = 1          # beats advanced per matrix application
    n_done = 0
    while n_done < max_beats:
        vec = step @ vec
        n_done += stride
        sigma = vec.reshape(m, m)
        pur = float(np.real(np.einsum("ab,ba->", sigma, sigma)))
        if pur <= threshold:
            t_total = n_done * beat_period
            return t_total / (p0 - pur)
        if n_done >= 64 * stride:
            # long horizon: double the stride; costs <=1/64 resolution in n
            step = step @ step
            stride *= 2
    raise RuntimeError(
        f"purity stayed above {threshold} over {max_beats} beat periods; "
        "insufficient propagation time")


def relaxation_time(kernel: DissipativeKernel,
                    null_factor: float = 1e-12) -> float:
    """Slowest relaxation scale, 1 / min |Re(lambda)| over the generator
    spectrum, excluding only the stationary null space.

    The null space is identified relative to the largest eigenvalue
    magnitude (see `asymptotic_state`); physical relaxation rates near an
    exact crossing sink arbitrarily far below the damping (overdamped
    tunneling relaxes as splitting^2 / width), so no damping-based cutoff is
    tenable.
    """
    if kernel.bath.damping == 0.0:
        raise RuntimeError("no relaxation detected: closed system (gamma = 0)")
    lam = np.linalg.eigvals(kernel.superoperator())
    floor = null_factor * float(np.max(np.abs(lam)))
    rates = np.abs(lam.real)
    keep = (np.abs(lam) > floor) & (rates > null_factor * rates.max())
    if not np.any(keep):
        raise RuntimeError("no relaxation detected: all generator eigenvalues "
                           f"sit below the cutoff {floor:.3e}")
    return float(1.0 / rates[keep].min())


def asymptotic_state(kernel: DissipativeKernel,
                     null_factor: float = 1e-12,
                     residual_tol: float = 1e-10) -> np.ndarray:
    """Stationary density matrix: the trace-one null vector of the generator.

    The null space is separated from slow relaxation modes by a relative
    spectral criterion, |lambda| < null_factor * max|lambda|; a fixed cutoff
    tied to the damping fails here because overdamped tunneling produces
    physical rates as small as (splitting)^2/width, arbitrarily far below
    gamma.  Raises RuntimeError when the null space is not one-dimensional
    (the dissipative coupling then fails to connect parts of the retained
    basis) or when the stationarity residual exceeds ``residual_tol``.
    """
    m = kernel.size
    sup = kernel.superoperator()
    lam, vecs = np.linalg.eig(sup)
    floor = null_factor * float(np.max(np.abs(lam)))
    null_idx = np.where(np.abs(lam) < floor)[0]
    if null_idx.size != 1:
        raise RuntimeError(
            f"stationary space has dimension {null_idx.size}, expected 1 "
            "(symmetry-disconnected sectors?)")
    sigma = vecs[:, null_idx[0]].reshape(m, m)
    sigma = 0.5 * (sigma + sigma.conj().T)
    tr = float(np.trace(sigma).real)
    if abs(tr) < 1e-12:
        raise RuntimeError("null vector is traceless; not a state")
    sigma = sigma / tr
    residual = float(np.max(np.abs(kernel.apply(sigma))))
    if residual > residual_tol:
        raise RuntimeError(f"stationarity residual {residual:.3e} exceeds "
                           f"{residual_tol:.1e}")
    _monitor_positivity(sigma)
    return sigma


def purity(sigma: np.ndarray) -> float:
    return float(np.real(np.einsum("ab,ba->", sigma, sigma)))


def restrict_to_three_levels(x: XCoefficients, bath: BathParams,
                             indices) -> DissipativeKernel:
    """Kernel over just the three crossing states, for comparison with the
    full retained set; trace preservation survives the restriction."""
    idx = np.asarray(indices, dtype=int)
    if idx.size != 3:
        raise ValueError("exactly three state indices required")
    if np.any(idx < 0) or np.any(idx >= x.size):
        raise ValueError(f"state indices {indices} outside the retained set "
                         f"of size {x.size}")
    return assemble_rwa_kernel(x.restricted(idx), bath)


# ---------------------------------------------------------------------------
# crossing triple: initial state and readout vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossingTriple:
    """Coefficient vectors tying the master equation to the crossing states.

    ``right``/``left`` address the localized combinations of the doublet,
    ``chaotic`` the unmixed chaotic configuration; all live in the retained
    Floquet basis.  ``beat_period`` is the chaotic-beat duration
    2*pi/|eps_upper - eps_lower| of the mixed pair.
    """

    indices: tuple[int, int, int]      # spectator, lower, upper
    mixing_angle: float
    right: np.ndarray
    left: np.ndarray
    chaotic: np.ndarray
    beat_period: float

    def initial_density_matrix(self, size: int) -> np.ndarray:
        sigma = np.outer(self.right, self.right.conj())
        if sigma.shape[0] != size:
            raise ValueError("triple vectors sized for a different basis")
        return sigma.astype(complex)


def localized_triple(spectrum: FloquetSpectrum, indices, mixing_angle: float,
                     x_elements: np.ndarray | None = None) -> CrossingTriple:
    """Build the right/left/chaotic readout vectors of a crossing triple.

    ``indices`` select (spectator, lower mixed, upper mixed) within the
    spectrum's state list; ``mixing_angle`` comes from the three-state fit at
    this amplitude.  Eigenvector sign conventions are fixed by maximizing the
    position expectation of the right-localized combination.
    """
    if x_elements is None:
        x_elements = spectrum.h0.x_elements
    i_s, i_lo, i_up = (int(i) for i in indices)
    states = spectrum.states
    m = len(states)
    u = {i: states[i].wavefunction_t0() for i in (i_s, i_lo, i_up)}
    for i in u:
        u[i] = u[i] / np.linalg.norm(u[i])
    cb, sb = np.cos(mixing_angle), np.sin(mixing_angle)

    best = None
    for sign_lo in (1.0, -1.0):
        for sign_up in (1.0, -1.0):
            u_reg = cb * sign_lo * u[i_lo] + sb * sign_up * u[i_up]
            for sign_s in (1.0, -1.0):
                psi = (sign_s * u[i_s] + u_reg) / np.sqrt(2.0)
                x_mean = float(psi @ x_elements @ psi)
                if best is None or x_mean > best[0]:
                    best = (x_mean, sign_s, sign_lo, sign_up)
    _, sign_s, sign_lo, sign_up = best

    right = np.zeros(m)
    right[i_s] = sign_s
    right[i_lo] = cb * sign_lo
    right[i_up] = sb * sign_up
    right /= np.sqrt(2.0)
    left = np.zeros(m)
    left[i_s] = sign_s
    left[i_lo] = -cb * sign_lo
    left[i_up] = -sb * sign_up
    left /= np.sqrt(2.0)
    chaotic = np.zeros(m)
    chaotic[i_lo] = -sb * sign_lo
    chaotic[i_up] = cb * sign_up

    beat = 2.0 * np.pi / abs(states[i_up].quasienergy - states[i_lo].quasienergy)
    return CrossingTriple(indices=(i_s, i_lo, i_up), mixing_angle=mixing_angle,
                          right=right, left=left, chaotic=chaotic,
                          beat_period=beat)
