"""
A dense triangle-free 5-critical graph
======================================

G5 joins the active sets of two pastings completely: one side pastes a
Toft graph, the other a Toft graph and a pentagon.  Most of its edges sit
in that complete bipartite join.
"""

# %%
# Build G5 from Toft(5), Toft(5) and C5.

import time

import numpy as np

from critgraph.colorer import chromatic_number, verify_witness
from critgraph.constructions import build_Gk, odd_cycle, toft
from critgraph.graph import density_stats, odd_girth
from critgraph.sizing import match_sizes
from critgraph.witnesses import color_Gk

g = build_Gk(5, ([toft(5)], [toft(5), odd_cycle(5)]))
print(density_stats(g), " odd girth", odd_girth(g))

# %%
# Exact search: four colors are not enough.

t0 = time.perf_counter()
print("chi =", chromatic_number(g).value, f"({time.perf_counter() - t0:.1f}s)")

# %%
# Criticality without search: every edge has a 4-coloring witness of
# G5 - e assembled from the pieces.

t0 = time.perf_counter()
ok = all(verify_witness(g.without_edge(*e), color_Gk(g, "after-removal", e)) for e in g.edges())
print(f"all {g.num_edges} edge witnesses verified: {ok} ({time.perf_counter() - t0:.1f}s)")

# %%
# The witnesses are plain arrays; count how often each color is used.

w = color_Gk(g, "proper-k")
colors, counts = np.unique(w.assignment, return_counts=True)
print(dict(zip(colors.tolist(), counts.tolist())))

# %%
# Size matching: both sides can be given equal active sets.  The first
# equal size is 100, using Toft(25, 25) on one side and Toft(5, 5) with
# C5 on the other.

m = match_sizes(5)
print(m.side_sizes, density_stats(m.build()))
