"""Entangled/separable border in the (J, gamma) plane.

Classifies steady states as entangled or separable on a parameter grid and
overlays the closed-form threshold curve gamma_c(J) = Omega^2 / (2 J). The
numeric boundary should hug the curve to within one grid cell.

Run:  python3 demos/03_border_map.py
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from drivenqubits import SystemParams, analytic_threshold, border_map

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

p = SystemParams(n_qubits=2, omega=1.0, delta=0.0, coupling_j=1.5, gamma=0.5, nbar=0.0)
j_grid = np.linspace(0.6, 2.8, 40)
g_grid = np.linspace(0.05, 1.2, 40)

print("Classifying a 40x40 (J, gamma) grid (takes ~1 min) ...")
bmap = border_map(p, ("J", j_grid), ("gamma", g_grid))

worst = 0.0
for i, j_val in enumerate(j_grid):
    entangled = np.nonzero(bmap.entangled[i])[0]
    if entangled.size:
        worst = max(worst, abs(g_grid[entangled[0]] - analytic_threshold(1.0, j_val)))
print(f"Max offset of the numeric boundary from Omega^2/(2J): {worst:.4f} "
      f"(cell height {g_grid[1] - g_grid[0]:.4f})")

fig, ax = plt.subplots(figsize=(6, 4.5))
ax.pcolormesh(j_grid, g_grid, bmap.entangled.T, cmap="Greens", shading="nearest")
ax.plot(j_grid, [analytic_threshold(1.0, j) for j in j_grid], "r--",
        label="gamma_c = Omega^2 / (2J)")
ax.set_xlabel("coupling J (Omega)")
ax.set_ylabel("decay rate gamma (Omega)")
ax.set_title("Steady-state entangled region (green) vs closed-form border")
ax.legend()
fig.tight_layout()
path = os.path.join(OUT, "border_map.png")
fig.savefig(path, dpi=150)
print(f"Figure written to {path}")
