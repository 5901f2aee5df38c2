"""Static double well: spectrum, tunnel doublets, and the position operator.

The well V(x) = -x^2/4 + x^4/(64 D) holds about D doublets below the barrier
top; the ground splitting is exponentially small in D.  This script prints
the doublet ladder for D = 4 and plots the potential with the level scheme.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from drivenwell import SystemParams, solve_h0

params = SystemParams(barrier_height=4.0, drive_amplitude=0.0,
                      drive_frequency=0.982)
spectrum = solve_h0(params, basis_size=300, num_states=60)

print("lowest levels (energy, parity):")
for k in range(10):
    print(f"  k={k}: E={spectrum.energies[k]:+.9f}  parity={spectrum.parities[k]:+d}")

splittings = spectrum.energies[1::2] - spectrum.energies[0::2]
print("\ndoublet splittings:")
for i, s in enumerate(splittings[:5]):
    print(f"  doublet {i}: {s:.3e}")

print(f"\n|<0|x|1>| = {abs(spectrum.x_elements[0, 1]):.4f} "
      f"(well position sqrt(8D) = {params.well_position:.4f})")

x = np.linspace(-9, 9, 400)
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(x, params.potential(x), "k-", lw=1.5)
for k in range(10):
    energy = spectrum.energies[k]
    style = "-" if spectrum.parities[k] > 0 else "--"
    ax.axhline(energy, ls=style, color="C0", lw=0.8, alpha=0.8)
ax.set(xlabel="x", ylabel="energy", ylim=(-4.5, 1.0),
       title="double well with tunnel doublets (D = 4)")
fig.tight_layout()
fig.savefig("demos_static_well.png", dpi=150)
print("\nwrote demos_static_well.png")
