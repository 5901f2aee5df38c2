"""Parameter records for the driven double well and its heat bath.

Units: hbar = 1, m = 1 throughout.  The static potential is
V(x) = -x^2/4 + x^4/(64*D), so the wells sit at x = +-sqrt(8*D), the barrier
top at V(0) = 0 and the well depth is D.  The driving force S*cos(omega*t)
enters the classical dynamics only through the rescaled amplitude
F = S/sqrt(8*D).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SystemParams:
    """Driven quartic double well: barrier height, drive amplitude, frequency."""

    barrier_height: float          # D, in units of hbar (inverse quantum of action)
    drive_amplitude: float         # F = S / sqrt(8 D), dimensionless
    drive_frequency: float         # omega

    def __post_init__(self):
        if self.barrier_height <= 0:
            raise ValueError(f"barrier_height must be > 0, got {self.barrier_height}")
        if self.drive_frequency <= 0:
            raise ValueError(f"drive_frequency must be > 0, got {self.drive_frequency}")
        if self.drive_amplitude < 0:
            raise ValueError(f"drive_amplitude must be >= 0, got {self.drive_amplitude}")

    @property
    def drive_force(self) -> float:
        """Force amplitude S = F * sqrt(8 D); kept consistent with F by construction."""
        return self.drive_amplitude * math.sqrt(8.0 * self.barrier_height)

    @classmethod
    def from_force(cls, barrier_height: float, drive_force: float,
                   drive_frequency: float) -> "SystemParams":
        """Construct from the bare force amplitude S instead of F."""
        if barrier_height <= 0:
            raise ValueError(f"barrier_height must be > 0, got {barrier_height}")
        return cls(barrier_height, drive_force / math.sqrt(8.0 * barrier_height),
                   drive_frequency)

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.drive_frequency

    @property
    def well_position(self) -> float:
        """Location of the right potential minimum, sqrt(8 D)."""
        return math.sqrt(8.0 * self.barrier_height)

    def potential(self, x):
        """Static potential V(x) = -x^2/4 + x^4/(64 D)."""
        return -0.25 * x**2 + x**4 / (64.0 * self.barrier_height)

    def force(self, x, t: float = 0.0):
        """Total force -dV/dx - S cos(omega t)."""
        return 0.5 * x - x**3 / (16.0 * self.barrier_height) \
            - self.drive_force * math.cos(self.drive_frequency * t)

    def replace_amplitude(self, drive_amplitude: float) -> "SystemParams":
        return SystemParams(self.barrier_height, drive_amplitude, self.drive_frequency)


@dataclass(frozen=True)
class BathParams:
    """Ohmic heat bath, J(omega) = m*gamma*omega with m = 1.

    Zero damping is admitted as the closed-system limit (useful for checking
    dissipative machinery against coherent results); relaxation quantities
    are undefined there and raise.
    """

    damping: float                 # gamma
    temperature: float             # k_B T in energy units

    def __post_init__(self):
        if self.damping < 0:
            raise ValueError(f"damping must be >= 0, got {self.damping}")
        if self.temperature < 0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature}")

    def weak_coupling_warnings(self, min_gap: float | None = None) -> list[str]:
        """Validity flags of the weak-coupling (Born-Markov) treatment.

        Returns a list of human-readable warnings; empty if none apply.
        ``min_gap`` is the smallest quasienergy gap among the retained states.
        """
        notes = []
        if self.temperature > 0 and self.damping >= self.temperature:
            notes.append(
                f"damping gamma={self.damping:g} is not small against "
                f"k_B T={self.temperature:g}; Born-Markov truncation questionable")
        if min_gap is not None and self.damping >= min_gap:
            notes.append(
                f"damping gamma={self.damping:g} is not small against the minimal "
                f"quasienergy gap {min_gap:g}; level widths overlap")
        return notes
