"""
Forbidding pentagons and longer odd cycles
==========================================

Three constructions push the odd girth past 5: the pentagon-free pasting
built from doubled cycles, the odd-girth family built from generalised
Mycielskians, and cones over odd cycles.
"""

# %%
# The doubling of C7 and a Type-2-minimal subgraph of it.  Every
# 3-coloring of the minimal subgraph uses at least two colors on its
# forward vertices, and deleting any edge breaks that.

from critgraph.colorer import chromatic_number, is_k_critical, min_colors_on_subset
from critgraph.constructions import build_G5k, cone, doubling, m_deleted, odd_cycle, ogt_graph
from critgraph.graph import density_stats, odd_girth

full = doubling(odd_cycle(7))
thin = m_deleted(odd_cycle(7), 2, 4, "greedy")
print("doubling  ", density_stats(full))
print("minimal   ", density_stats(thin), " removed", len(thin.parts["removed"]), "Type-2 edges")
print("min forward colors:", min_colors_on_subset(thin, 3, thin.blocks["forward"]).value)

# %%
# Pentagon-and-triangle-free 4-critical graph from two pastings over the
# doubled heptagon.

g = build_G5k(4, m=7)
print(density_stats(g), " odd girth", odd_girth(g), " chi", chromatic_number(g).value)
print("4-critical:", is_k_critical(g, 4).critical)

# %%
# Odd girth 2q + 5: the bipartite block between the two new independent
# sets holds a 1/(2q+4)^2 share of n^2.

for q in (1, 2, 3):
    h = ogt_graph(q, 2 * q + 5)
    side = len(h.parts["sides"][0].blocks["active"])
    print(f"q={q}: n={h.n} odd girth {odd_girth(h)} block {side * side}/{h.n ** 2}")

# %%
# Cones over odd cycles stay 4-chromatic however many layers they have.

for m, q in ((7, 2), (9, 3), (11, 4)):
    c = cone(odd_cycle(m), q)
    print(f"cone(C{m}, {q}): n={c.n} odd girth {odd_girth(c)} chi {chromatic_number(c).value}")
