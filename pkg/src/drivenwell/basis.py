"""Eigenproblem of the undriven double well H0 = p^2/2 - x^2/4 + x^4/(64 D).

The well is diagonalized in a harmonic-oscillator ladder basis centered at
x = 0.  All matrix elements are assembled exactly from the ladder rules (x is
tridiagonal, x^4 by repeated matrix multiplication), so there is no quadrature
error; the only approximation is the basis truncation.  Because the potential
is even, the even and odd ladder states decouple and the two sectors are
diagonalized separately.  This keeps the near-degenerate tunnel doublets
numerically distinct and makes the parity labels exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import SystemParams

__all__ = ["H0Spectrum", "solve_h0", "position_matrix"]


@dataclass(frozen=True)
class H0Spectrum:
    """Lowest eigenpairs of the undriven well, plus position matrix elements.

    Attributes
    ----------
    energies : (K,) ascending eigenenergies E_k
    parities : (K,) entries +-1; alternates as (-1)^k for the double well
    x_elements : (K, K) real symmetric <Psi_k|x|Psi_k'>; zero between equal
        parities (selection rule holds exactly, not just to rounding)
    x2_diagonal : (K,) <Psi_k|x^2|Psi_k> evaluated in the full computational
        basis, used for truncation diagnostics
    params : system parameters the spectrum was computed for
    basis_size : size of the computational ladder basis
    """

    energies: np.ndarray
    parities: np.ndarray
    x_elements: np.ndarray
    x2_diagonal: np.ndarray
    params: SystemParams
    basis_size: int

    @property
    def size(self) -> int:
        return self.energies.size

    def completeness_defect(self) -> np.ndarray:
        """Relative defect of sum_k' |x_kk'|^2 against <x^2>_k, per state.

        Small values mean the retained K states exhaust the position operator
        acting on state k; grows toward the truncation edge.
        """
        row_sums = np.sum(self.x_elements**2, axis=1)
        return np.abs(row_sums - self.x2_diagonal) / self.x2_diagonal


def _ladder_position(n: int, frequency: float) -> np.ndarray:
    """Position operator in an n-state oscillator ladder basis, frequency Omega."""
    off = np.sqrt(np.arange(1, n) / (2.0 * frequency))
    x = np.zeros((n, n))
    idx = np.arange(n - 1)
    x[idx, idx + 1] = off
    x[idx + 1, idx] = off
    return x


def _ladder_kinetic(n: int, frequency: float) -> np.ndarray:
    """p^2/2 in the same ladder basis."""
    t = np.zeros((n, n))
    n_arr = np.arange(n)
    t[n_arr, n_arr] = 0.5 * frequency * (n_arr + 0.5)
    idx = np.arange(n - 2)
    off = -0.25 * frequency * np.sqrt((idx + 1.0) * (idx + 2.0))
    t[idx, idx + 2] = off
    t[idx + 2, idx] = off
    return t


def solve_h0(params: SystemParams, basis_size: int = 300, num_states: int = 60,
             ladder_frequency: float = 1.0) -> H0Spectrum:
    """Diagonalize H0 and return the lowest ``num_states`` eigenpairs.

    Parameters
    ----------
    basis_size : computational ladder basis size; must be >= 2*num_states
    num_states : retained states K; must cover both ladders around the
        barrier top, i.e. K >= 2*ceil(D)
    ladder_frequency : oscillator frequency of the expansion basis.  The
        default matches the curvature at the well bottoms (which is 1 in the
        scaled units, independent of D).

    Raises
    ------
    ValueError on precondition violations; RuntimeError if the eigensolver
    fails or the retained block is not converged in the computational basis.
    """
    D = params.barrier_height
    if num_states < 2 * int(np.ceil(D)):
        raise ValueError(
            f"num_states={num_states} too small: need >= {2 * int(np.ceil(D))} "
            f"to cover the doublet ladders for D={D}")
    if basis_size < 2 * num_states:
        raise ValueError(
            f"basis_size={basis_size} must be at least twice num_states={num_states}; "
            "the top half of the computational spectrum carries truncation error")

    x = _ladder_position(basis_size, ladder_frequency)
    x2 = x @ x
    h = _ladder_kinetic(basis_size, ladder_frequency) - 0.25 * x2 \
        + (x2 @ x2) / (64.0 * D)

    # Even/odd ladder indices decouple; solve the two blocks separately so the
    # doublet eigenvectors cannot mix across parity.
    vals = {}
    vecs = {}
    for sign, sel in ((+1, np.arange(0, basis_size, 2)),
                      (-1, np.arange(1, basis_size, 2))):
        try:
            w, v = np.linalg.eigh(h[np.ix_(sel, sel)])
        except np.linalg.LinAlgError as exc:
            raise RuntimeError(f"eigensolver failed on parity block {sign:+d}: {exc}")
        vals[sign] = w
        vecs[sign] = v

    # Interleave by energy; for the symmetric well this alternates parity.
    k_half = num_states // 2 + num_states % 2
    energies = np.empty(num_states)
    parities = np.empty(num_states, dtype=int)
    full_vectors = np.zeros((basis_size, num_states))
    even_sel = np.arange(0, basis_size, 2)
    odd_sel = np.arange(1, basis_size, 2)
    counters = {+1: 0, -1: 0}
    for k in range(num_states):
        cand = {s: vals[s][counters[s]] for s in (+1, -1)}
        sign = +1 if cand[+1] <= cand[-1] else -1
        i = counters[sign]
        energies[k] = vals[sign][i]
        parities[k] = sign
        sel = even_sel if sign == +1 else odd_sel
        full_vectors[sel, k] = vecs[sign][:, i]
        counters[sign] += 1
    del k_half

    if np.any(np.diff(energies) <= 0):
        raise RuntimeError("retained eigenvalues are not strictly increasing; "
                           "increase basis_size")

    residual = _residual_norms(h, energies, full_vectors)
    if residual.max() > 1e-8:
        raise RuntimeError(
            f"eigenpairs not converged: max residual {residual.max():.3e}; "
            "increase basis_size")

    x_elem = full_vectors.T @ x @ full_vectors
    # Parity selection rule: zero out the (exactly zero up to rounding)
    # same-parity entries so the rule holds identically downstream.
    mask = np.equal.outer(parities, parities)
    x_elem[mask] = 0.0
    x_elem = 0.5 * (x_elem + x_elem.T)

    x2_diag = np.einsum("nk,nm,mk->k", full_vectors, x2, full_vectors)

    return H0Spectrum(energies=energies, parities=parities, x_elements=x_elem,
                      x2_diagonal=x2_diag, params=params, basis_size=basis_size)


def _residual_norms(h: np.ndarray, energies: np.ndarray,
                    vectors: np.ndarray) -> np.ndarray:
    r = h @ vectors - vectors * energies
    return np.linalg.norm(r, axis=0)


def position_matrix(spectrum: H0Spectrum) -> np.ndarray:
    """Position matrix elements x_kk' in the eigenbasis of H0.

    The parity selection rule (x vanishes between equal parities) and the
    symmetry x_kk' = x_k'k hold exactly.
    """
    return spectrum.x_elements.copy()


def convergence_check(params: SystemParams, basis_size: int, num_states: int,
                      growth: float = 1.5, ladder_frequency: float = 1.0) -> float:
    """Max relative change of the retained energies when the computational
    basis is enlarged by ``growth``.  Converged setups return < 1e-10."""
    a = solve_h0(params, basis_size, num_states, ladder_frequency)
    b = solve_h0(params, int(np.ceil(basis_size * growth)), num_states,
                 ladder_frequency)
    scale = np.maximum(np.abs(a.energies), 1.0)
    return float(np.max(np.abs(a.energies - b.energies) / scale))
