"""Floquet spectra and dissipative dynamics of the driven quartic double well.

Scaled units with hbar = m = 1.  The library covers:

- the static well eigenproblem (`basis`),
- the Floquet eigenproblem in parity sectors, amplitude sweeps and
  crossing detection (`floquet`),
- the analytic three-level model of a singlet-doublet crossing
  (`threestate`),
- the Floquet-Markov master equation with an Ohmic bath: kernels,
  propagation, time scales and the asymptotic state (`dissipation`),
- classical stroboscopic maps (`classical`),
- a configuration-driven command line front end (`cli`).
"""

from .params import BathParams, SystemParams
from .basis import H0Spectrum, position_matrix, solve_h0

__all__ = [
    "BathParams",
    "SystemParams",
    "H0Spectrum",
    "position_matrix",
    "solve_h0",
]

__version__ = "0.1.0"
