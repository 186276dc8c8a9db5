"""
Where the density constants come from
=====================================

The lower bounds in the density table are optima of a one-variable
ratio.  This script recomputes them exactly, checks them on a grid, and
prints the table.
"""

# %%
# The ratio (c + x) / (m + x)^2 peaks at x = m - 2c.

from fractions import Fraction

import numpy as np

from critgraph.constructions import BaseCatalog, build_Gk
from critgraph.graph import density_stats
from critgraph.sizing import DENSITY_MODELS, density_table, format_density_table, optimize_ratio

for key, (c, m) in DENSITY_MODELS.items():
    x, best = optimize_ratio(c, m)
    xs = np.linspace(0.0, 2 * float(m), 200001)
    grid = (float(c) + xs) / (float(m) + xs) ** 2
    print(f"{key}: x*={x}  ratio={best}  grid max {grid.max():.8f} at {xs[grid.argmax()]:.4f}")

# %%
# The table of lower bounds.

print(format_density_table(density_table()))

# %%
# Growing G6 instances creep towards 1/4 as their active sets dominate.

for m in (5, 7, 9):
    g = build_Gk(6, catalog=BaseCatalog("triangle", m))
    st = density_stats(g)
    print(f"m={m}: n={st.vertices} e/n^2={float(st.ratio):.4f} gap to 1/4: {float(Fraction(1, 4) - st.ratio):.4f}")
