"""Undirected simple graphs with per-vertex role labels.

Vertex ids are dense integers ``0..n-1``.  Builders mutate a graph while
assembling it; everything downstream treats graphs as read-only values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

__all__ = [
    "Role",
    "PLAIN",
    "ACTIVE",
    "FORWARD",
    "BASE",
    "APEX",
    "Graph",
    "DensityStats",
    "new_graph",
    "add_edge",
    "odd_girth",
    "has_odd_cycle_at_most",
    "density_stats",
    "disjoint_union",
    "join_complete_bipartite",
    "join_matching",
]

INFINITE = math.inf

_KINDS = ("plain", "active", "structural", "forward", "base", "apex")


@dataclass(frozen=True, order=True)
class Role:
    """Role tag of a vertex.  ``layer`` is only meaningful for structural vertices."""

    kind: str
    layer: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown role kind {self.kind!r}")
        if self.kind == "structural" and self.layer < 1:
            raise ValueError("structural roles need a layer index >= 1")

    @classmethod
    def structural(cls, layer: int) -> "Role":
        return cls("structural", layer)

    @classmethod
    def parse(cls, text: str) -> "Role":
        kind, _, layer = text.partition(":")
        return cls(kind, int(layer) if layer else 0)

    def __str__(self) -> str:
        return f"structural:{self.layer}" if self.kind == "structural" else self.kind


PLAIN = Role("plain")
ACTIVE = Role("active")
FORWARD = Role("forward")
BASE = Role("base")
APEX = Role("apex")


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Besides adjacency, a graph carries one :class:`Role` per vertex, an
    optional provenance tag per vertex, and ``blocks``: named vertex sets
    (e.g. ``"C1/active"``) recorded by the builders so that callers can
    address the pieces of a composite construction without recomputing them.
    Builders also attach ``spec`` (the construction description) and
    ``parts`` (child graphs and offsets) used by the witness generators.
    """

    def __init__(self, n: int = 0):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self.roles: list[Role] = [PLAIN] * n
        self.tags: list[str | None] = [None] * n
        self.blocks: dict[str, list[int]] = {}
        self.spec = None
        self.parts: dict = {}
        self.critical_order: int | None = None
        self._m = 0

    # -- basic queries -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def num_edges(self) -> int:
        return self._m

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        kind = f" {self.spec.kind}" if self.spec is not None else ""
        return f"<Graph{kind} n={self.n} m={self._m}>"

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def neighbor_set(self, v: int) -> set[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def adjacency(self) -> list[list[int]]:
        return [sorted(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, in ascending order."""
        return [(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    def vertices_with(self, kind: str) -> list[int]:
        return [v for v, r in enumerate(self.roles) if r.kind == kind]

    def is_independent(self, vs: Iterable[int]) -> bool:
        s = set(vs)
        return all(not (self._adj[v] & s) for v in s)

    # -- mutation (builders only) ------------------------------------
    def add_vertex(self, role: Role = PLAIN, tag: str | None = None) -> int:
        self._adj.append(set())
        self.roles.append(role)
        self.tags.append(tag)
        return self.n - 1

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if v not in self._adj[u]:
            self._adj[u].add(v)
            self._adj[v].add(u)
            self._m += 1
        return self

    def add_edges(self, pairs: Iterable[tuple[int, int]]) -> "Graph":
        for u, v in pairs:
            self.add_edge(u, v)
        return self

    def remove_edge(self, u: int, v: int) -> "Graph":
        if v not in self._adj[u]:
            raise KeyError(f"no edge ({u}, {v})")
        self._adj[u].discard(v)
        self._adj[v].discard(u)
        self._m -= 1
        return self

    # -- derived graphs ----------------------------------------------
    def copy(self) -> "Graph":
        g = Graph(0)
        g._adj = [set(a) for a in self._adj]
        g.roles = list(self.roles)
        g.tags = list(self.tags)
        g.blocks = {k: list(v) for k, v in self.blocks.items()}
        g.spec = self.spec
        g.parts = dict(self.parts)
        g.critical_order = self.critical_order
        g._m = self._m
        return g

    def without_edge(self, u: int, v: int) -> "Graph":
        g = self.copy()
        g.remove_edge(u, v)
        return g

    def induced_subgraph(self, vs: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vs`` (new ids follow the order of ``vs``)."""
        index = {v: i for i, v in enumerate(vs)}
        if len(index) != len(vs):
            raise ValueError("repeated vertex in induced_subgraph")
        h = Graph(len(vs))
        for i, v in enumerate(vs):
            h.roles[i] = self.roles[v]
            h.tags[i] = self.tags[v]
            for w in self._adj[v]:
                j = index.get(w)
                if j is not None and i < j:
                    h.add_edge(i, j)
        return h, list(vs)

    def same_adjacency(self, other: "Graph") -> bool:
        return self.n == other.n and all(a == b for a, b in zip(self._adj, other._adj))

    def set_block(self, name: str, vs: Iterable[int]) -> None:
        self.blocks[name] = sorted(vs)


def new_graph(n: int) -> Graph:
    return Graph(n)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    return g.add_edge(u, v)


# ---------------------------------------------------------------------
# odd girth


def _double_cover(g: Graph) -> csr_matrix:
    # vertex (v, parity) -> 2v + parity; every edge flips parity
    rows, cols = [], []
    for u, v in g.edges():
        rows += [2 * u, 2 * u + 1, 2 * v, 2 * v + 1]
        cols += [2 * v + 1, 2 * v, 2 * u + 1, 2 * u]
    data = np.ones(len(rows), dtype=np.int8)
    return csr_matrix((data, (rows, cols)), shape=(2 * g.n, 2 * g.n))


def odd_girth(g: Graph, chunk: int = 256) -> float:
    """Length of a shortest odd cycle, or ``math.inf`` when ``g`` is bipartite.

    For each root ``r`` the distance from ``(r, even)`` to ``(r, odd)`` in the
    bipartite double cover is the shortest odd closed walk through ``r``; the
    minimum over all roots is the odd girth.
    """
    if g.num_edges == 0:
        return INFINITE
    cover = _double_cover(g)
    best = INFINITE
    roots = np.arange(g.n)
    for start in range(0, g.n, chunk):
        batch = roots[start:start + chunk]
        dist = shortest_path(cover, method="D", unweighted=True, indices=2 * batch)
        d = dist[np.arange(len(batch)), 2 * batch + 1]
        m = d.min()
        if m < best:
            best = m
            if best == 3:
                break
    return int(best) if best != INFINITE else INFINITE


def has_odd_cycle_at_most(g: Graph, length: int) -> bool:
    if length < 3 or length % 2 == 0:
        raise ValueError("length must be odd and at least 3")
    return odd_girth(g) <= length


# ---------------------------------------------------------------------
# density


@dataclass(frozen=True)
class DensityStats:
    vertices: int
    edges: int
    ratio: Fraction

    @property
    def ratio_float(self) -> float:
        return float(self.ratio)

    def __str__(self) -> str:
        return f"n={self.vertices} e={self.edges} e/n^2={self.ratio} ({float(self.ratio):.6f})"


def density_stats(g: Graph) -> DensityStats:
    if g.n < 1:
        raise ValueError("density of the empty graph is undefined")
    return DensityStats(g.n, g.num_edges, Fraction(g.num_edges, g.n * g.n))


# ---------------------------------------------------------------------
# composition


def disjoint_union(gs: Sequence[Graph], prefixes: Sequence[str] | None = None):
    """Disjoint union of ``gs``; returns ``(graph, offsets)``.

    Blocks of the i-th graph are carried over under ``prefixes[i] + "/"``.
    """
    out = Graph(0)
    offsets = []
    for i, h in enumerate(gs):
        off = out.n
        offsets.append(off)
        out._adj.extend({w + off for w in a} for a in h._adj)
        out.roles.extend(h.roles)
        out.tags.extend(h.tags)
        out._m += h._m
        if prefixes is not None:
            p = prefixes[i]
            out.blocks[p] = list(range(off, off + h.n))
            for name, vs in h.blocks.items():
                out.blocks[f"{p}/{name}"] = [v + off for v in vs]
    return out, offsets


def join_complete_bipartite(g: Graph, a: Iterable[int], b: Iterable[int], strict: bool = True) -> Graph:
    """Add every edge between the vertex sets ``a`` and ``b``.

    Both sets must be disjoint independent sets.  With ``strict`` we also
    refuse when some vertex already has neighbours in both sets, since the
    join would then close a triangle.
    """
    a, b = list(a), list(b)
    sa, sb = set(a), set(b)
    if sa & sb:
        raise ValueError("join sets overlap")
    if not g.is_independent(sa) or not g.is_independent(sb):
        raise ValueError("join sets must be independent")
    if strict:
        na = set().union(*(g._adj[v] for v in sa)) if sa else set()
        nb = set().union(*(g._adj[v] for v in sb)) if sb else set()
        if na & nb:
            raise ValueError("a vertex has neighbours on both sides; join would create a triangle")
    for u in a:
        for v in b:
            g.add_edge(u, v)
    return g


def join_matching(g: Graph, a: Sequence[int], b: Sequence[int]) -> Graph:
    if len(a) != len(b):
        raise ValueError(f"matching sides differ in length: {len(a)} != {len(b)}")
    if set(a) & set(b):
        raise ValueError("matching sides overlap")
    for u, v in zip(a, b):
        g.add_edge(u, v)
    return g
