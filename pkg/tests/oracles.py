"""Slow, obviously-correct reference implementations used only by tests.

They share no code with the library: plain Python over adjacency bitmasks.
"""

from __future__ import annotations

import math
import random

from hypothesis import strategies as st

from critgraph.graph import Graph


def masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.neighbor_set(v)) for v in range(g.n)]


def brute_odd_girth(g: Graph) -> float:
    """Shortest odd cycle by enumerating simple cycles of length 3, 5, ...

    A cycle of length L is searched as a simple path v0 -> ... -> v_{L-1}
    with v0 the smallest vertex on it and an edge back to v0.
    """
    adj = masks(g)
    n = g.n

    def extend(start: int, last: int, used: int, length: int, want: int) -> bool:
        if length == want:
            return bool(adj[last] >> start & 1)
        nxt = adj[last] & ~used & ~((1 << (start + 1)) - 1)
        while nxt:
            w = (nxt & -nxt).bit_length() - 1
            nxt &= nxt - 1
            if extend(start, w, used | (1 << w), length + 1, want):
                return True
        return False

    for want in range(3, n + 1, 2):
        for s in range(n):
            if extend(s, s, 1 << s, 1, want):
                return want
    return math.inf


def brute_chromatic(g: Graph) -> int:
    """Exact chromatic number by subset dynamic programming over independent sets."""
    n = g.n
    if n == 0:
        return 0
    adj = masks(g)
    full = (1 << n) - 1
    indep = [True] * (1 << n)
    for s in range(1, 1 << n):
        low = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        indep[s] = indep[rest] and not (adj[low] & rest)
    best = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        rest = s ^ low
        b = n
        sub = rest
        # independent sets containing the lowest vertex of s
        while True:
            part = sub | low
            if indep[part]:
                b = min(b, best[s ^ part] + 1)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[s] = b
    return best[full]


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    return g


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n).add_edges(chosen)
