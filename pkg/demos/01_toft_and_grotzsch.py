"""
Two small 4-critical graphs
===========================

The Grötzsch graph is the smallest triangle-free graph that needs four
colors.  Toft's graph is much denser: two odd cycles, each matched to an
independent set, with the two sets joined completely.
"""

# %%
# Build both graphs and look at their sizes.

from critgraph.colorer import chromatic_number, is_k_critical
from critgraph.constructions import grotzsch, toft
from critgraph.graph import density_stats, odd_girth
from critgraph.witnesses import color_Gk

g = grotzsch()
t = toft(5)
for name, h in (("grotzsch", g), ("toft(5)", t)):
    print(f"{name:9s} {density_stats(h)}  odd girth {odd_girth(h)}")

# %%
# The exact engine settles the chromatic number and checks every edge.

for name, h in (("grotzsch", g), ("toft(5)", t)):
    chi = chromatic_number(h)
    rep = is_k_critical(h, 4)
    print(f"{name:9s} chi={chi.value}  {rep.verdict} ({len(rep.per_edge)} edges checked)")

# %%
# Toft's graph is a two-sided pasting, so it also has coloring witnesses
# read off its structure rather than found by search.  The proper
# 4-coloring puts colors {1, 2} on one active side and {3, 4} on the other.

w = color_Gk(t, "proper-k")
left, right = t.blocks["C1/active"], t.blocks["C2/active"]
print("left actives ", sorted({w.assignment[a] for a in left}))
print("right actives", sorted({w.assignment[a] for a in right}))

# Removing any edge leaves a 3-colorable graph; here is the witness for
# an edge of the complete join.
e = (left[0], right[0])
w = color_Gk(t, "after-removal", e)
print(f"after removing {e}: {w.k} colors, clause {w.clause}")
