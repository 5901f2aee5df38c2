"""Stroboscopic phase-space portrait of the driven well (F = 0.015).

Two regular islands survive around the well bottoms, the destroyed
separatrix leaves a chaotic layer connecting them, and the 1:1 resonance
forms a visible island chain.  Seeds are integrated in one batch with the
symplectic splitting integrator.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from drivenwell import SystemParams
from drivenwell.classical import portrait

params = SystemParams(barrier_height=4.0, drive_amplitude=0.015,
                      drive_frequency=0.982)

seeds = []
for x0 in np.linspace(-7.5, 7.5, 28):
    seeds.append((x0, 0.0))
for p0 in (-0.6, -0.2, 0.2, 0.6):
    seeds.append((0.1, p0))
seeds = np.array(seeds)

cloud = portrait(seeds, n_periods=600, params=params)

fig, ax = plt.subplots(figsize=(7, 4.5))
for orbit in cloud:
    ax.plot(orbit[:, 0], orbit[:, 1], ".", ms=0.4, alpha=0.7)
ax.set(xlabel="x", ylabel="p", xlim=(-9, 9), ylim=(-3.2, 3.2),
       title=f"stroboscopic portrait, F = {params.drive_amplitude}, "
             f"omega = {params.drive_frequency}")
fig.tight_layout()
fig.savefig("demos_portrait.png", dpi=150)
print("wrote demos_portrait.png")
