"""Builders for the critical-graph families.

Every builder returns a role-labelled :class:`~critgraph.graph.Graph` with
``g.spec`` set to a :class:`ConstructionSpec` that rebuilds it exactly, and
``g.parts`` holding the sub-graphs and index maps the witness generators
walk.  ``g.critical_order`` records the chromatic number the construction
is designed to be critical for (``None`` when unknown).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

from .colorer import Budget, BudgetExhausted, ColorConstraint, decide_colorable
from .graph import (
    ACTIVE,
    APEX,
    BASE,
    FORWARD,
    PLAIN,
    Graph,
    Role,
    disjoint_union,
    join_complete_bipartite,
    join_matching,
)

__all__ = [
    "ConstructionSpec",
    "BaseCatalog",
    "odd_cycle",
    "grotzsch",
    "toft",
    "mycielski",
    "mu_q",
    "doubling",
    "type2_edges",
    "m_deleted",
    "build_U",
    "build_W",
    "build_Gk",
    "build_G5k",
    "gyarfas",
    "build_Y",
    "ogt_graph",
    "cone",
    "active_index",
    "active_coords",
    "u_orders",
]


@dataclass
class ConstructionSpec:
    """Recursive description of how a graph is assembled."""

    kind: str
    params: dict = field(default_factory=dict)
    children: list["ConstructionSpec"] = field(default_factory=list)

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.params:
            d["params"] = dict(sorted(self.params.items()))
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ConstructionSpec":
        if "kind" not in d:
            raise ValueError("construction spec needs a 'kind'")
        params = {k: (list(v) if isinstance(v, list) else v) for k, v in d.get("params", {}).items()}
        return cls(d["kind"], params, [cls.from_dict(c) for c in d.get("children", [])])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ConstructionSpec":
        return cls.from_dict(json.loads(text))

    def key(self) -> str:
        return self.to_json()

    def build(self, budget: Budget | None = None) -> Graph:
        p = self.params
        kids = [c.build(budget) for c in self.children]
        kind = self.kind
        if kind == "cycle":
            return odd_cycle(p["m"])
        if kind == "grotzsch":
            return grotzsch()
        if kind == "toft":
            return toft(p["m"], p.get("m2"))
        if kind == "mycielski":
            return mycielski(kids[0])
        if kind == "muq":
            return mu_q(kids[0], p["q"])
        if kind == "doubling":
            return doubling(kids[0])
        if kind == "mdeleted":
            return m_deleted(kids[0], p["r"], p["k"], p.get("policy", "greedy"), budget)
        if kind == "U":
            return build_U(kids)
        if kind == "W":
            return build_W(p["k"], p["rs"], kids, budget)
        if kind == "Gk":
            return build_Gk(p["k"], (kids[0].parts["children"], kids[1].parts["children"]))
        if kind == "G5k":
            return _g5k_from_sides(p["k"], kids[0], kids[1])
        if kind == "gyarfas":
            return gyarfas(p["m"])
        if kind == "Y":
            return build_Y(p["q"], p["m"])
        if kind == "ogt":
            return ogt_graph(p["q"], p["m"])
        if kind == "cone":
            return cone(kids[0], p["q"])
        raise ValueError(f"unknown construction kind {kind!r}")


def _spec_of(g: Graph) -> ConstructionSpec:
    if g.spec is None:
        raise ValueError("child graph has no construction spec; build it with a constructions builder")
    return g.spec


def _check_odd(m: int, least: int) -> None:
    if not isinstance(m, int) or m % 2 == 0 or m < least:
        raise ValueError(f"cycle length must be odd and >= {least}, got {m!r}")


# ---------------------------------------------------------------------
# basic families


def odd_cycle(m: int) -> Graph:
    _check_odd(m, 3)
    g = Graph(m)
    for i in range(m):
        g.add_edge(i, (i + 1) % m)
    g.spec = ConstructionSpec("cycle", {"m": m})
    g.critical_order = 3
    return g


def mycielski(h: Graph) -> Graph:
    """Mycielskian: forward copy of every vertex on its neighbourhood, plus an apex."""
    n = h.n
    if n == 0:
        raise ValueError("mycielski needs a nonempty graph")
    if any(h.degree(v) == 0 for v in range(n)):
        raise ValueError("mycielski needs a graph without isolated vertices")
    g = Graph(2 * n + 1)
    for u, v in h.edges():
        g.add_edge(u, v)
        g.add_edge(n + u, v)
        g.add_edge(n + v, u)
    apex = 2 * n
    for v in range(n):
        g.add_edge(n + v, apex)
        g.roles[v] = BASE
        g.roles[n + v] = FORWARD
    g.roles[apex] = APEX
    g.set_block("base", range(n))
    g.set_block("forward", range(n, 2 * n))
    g.set_block("apex", [apex])
    g.spec = ConstructionSpec("mycielski", children=[_spec_of(h)])
    order = getattr(h, "critical_order", None)
    g.critical_order = order + 1 if order else None
    g.parts = {"base": h}
    return g


def grotzsch() -> Graph:
    g = mycielski(odd_cycle(5))
    g.spec = ConstructionSpec("grotzsch")
    return g


def mu_q(h: Graph, q: int) -> Graph:
    """Generalised Mycielskian without apex: layers ``v^0..v^q``.

    ``v^i`` is joined to ``w^(i-1)`` for every edge ``vw``; layer 0 keeps the
    original edges and layer ``q`` is the active layer.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    n = h.n
    g = Graph((q + 1) * n)
    edges = h.edges()
    for u, v in edges:
        g.add_edge(u, v)
    for i in range(1, q + 1):
        lo, hi = (i - 1) * n, i * n
        for u, v in edges:
            g.add_edge(hi + u, lo + v)
            g.add_edge(hi + v, lo + u)
    for v in range(n):
        g.roles[v] = BASE
        g.roles[q * n + v] = ACTIVE
        for i in range(1, q):
            g.tags[i * n + v] = f"layer{i}"
    for i in range(q + 1):
        g.set_block(f"layer{i}", range(i * n, (i + 1) * n))
    g.set_block("active", range(q * n, (q + 1) * n))
    g.spec = ConstructionSpec("muq", {"q": q}, [_spec_of(h)])
    g.critical_order = None
    g.parts = {"base": h, "q": q}
    return g


def doubling(h: Graph) -> Graph:
    """Add a forward copy of every vertex joined to its neighbourhood.

    Original edges are Type 1, edges at forward vertices are Type 2.
    """
    n = h.n
    if any(h.degree(v) == 0 for v in range(n)):
        raise ValueError("doubling needs a graph without isolated vertices")
    g = Graph(2 * n)
    for u, v in h.edges():
        g.add_edge(u, v)
        g.add_edge(n + u, v)
        g.add_edge(n + v, u)
    for v in range(n):
        g.roles[v] = BASE
        g.roles[n + v] = FORWARD
    g.set_block("base", range(n))
    g.set_block("forward", range(n, 2 * n))
    g.spec = ConstructionSpec("doubling", children=[_spec_of(h)])
    g.critical_order = None
    g.parts = {"base": h, "origin": {n + v: v for v in range(n)}, "r": None}
    return g


def type2_edges(g: Graph) -> list[tuple[int, int]]:
    """Edges with a forward endpoint, ascending."""
    fwd = {v for v in range(g.n) if g.roles[v].kind == "forward"}
    return [e for e in g.edges() if e[0] in fwd or e[1] in fwd]


def _toft_like(m: int, m2: int | None) -> Graph:
    m2 = m if m2 is None else m2
    _check_odd(m, 5)
    _check_odd(m2, 5)
    return build_Gk(4, ([odd_cycle(m)], [odd_cycle(m2)]))


def toft(m: int, m2: int | None = None) -> Graph:
    """Toft's graph: two odd cycles each matched to an independent set, the
    two sets joined completely.  ``m2`` allows unequal cycle lengths."""
    g = _toft_like(m, m2)
    params = {"m": m}
    if m2 is not None and m2 != m:
        params["m2"] = m2
    g.spec = ConstructionSpec("toft", params)
    return g


# ---------------------------------------------------------------------
# active-set pasting


def build_U(children: Sequence[Graph], plugs: Sequence[Sequence[int]] | None = None, mode: str = "U") -> Graph:
    """Paste children onto the product active set.

    The active vertex with coordinates ``(p_1, ..., p_t)`` (indices into the
    children's plug lists, last coordinate fastest) is joined to the
    ``p_i``-th plug of child ``i``.  In U-mode the plug of a child is its
    whole vertex set and child vertices become structural of type ``i``; in
    W-mode plugs are the forward vertices and child roles are kept.
    """
    children = list(children)
    if plugs is None:
        plugs = [list(range(c.n)) for c in children]
    plugs = [list(p) for p in plugs]
    if len(plugs) != len(children):
        raise ValueError("one plug list per child is required")
    if any(len(p) == 0 for p in plugs):
        raise ValueError("child plug sets must be nonempty")
    g, offsets = disjoint_union(children, [f"S{i + 1}" for i in range(len(children))])
    if mode == "U":
        for i, (c, off) in enumerate(zip(children, offsets)):
            for v in range(c.n):
                g.roles[off + v] = Role.structural(i + 1)
    gplugs = [[offsets[i] + v for v in p] for i, p in enumerate(plugs)]
    start = g.n
    radix = [len(p) for p in plugs]
    for coords in itertools.product(*[range(r) for r in radix]):
        a = g.add_vertex(ACTIVE)
        for i, ci in enumerate(coords):
            g.add_edge(a, gplugs[i][ci])
    active = list(range(start, g.n))
    g.set_block("active", active)
    g.spec = ConstructionSpec("U", children=[_spec_of(c) for c in children]) if mode == "U" else None
    g.critical_order = None
    g.parts = {
        "mode": mode,
        "children": children,
        "offsets": offsets,
        "plugs": gplugs,
        "radix": radix,
        "active_start": start,
    }
    return g


def active_index(u: Graph, coords: Sequence[int]) -> int:
    idx = 0
    for c, r in zip(coords, u.parts["radix"]):
        idx = idx * r + c
    return u.parts["active_start"] + idx


def active_coords(u: Graph, a: int) -> tuple[int, ...]:
    idx = a - u.parts["active_start"]
    out = []
    for r in reversed(u.parts["radix"]):
        idx, c = divmod(idx, r)
        out.append(c)
    return tuple(reversed(out))


def u_orders(k: int, i: int) -> list[int]:
    """Criticality orders ``k-1, k-2, ..., k-i+1`` of the children of U^{k-1}_{k-i+1}."""
    return list(range(k - 1, k - i, -1))


def _check_children(children: Sequence[Graph], orders: Sequence[int]) -> None:
    if len(children) != len(orders):
        raise ValueError(f"expected {len(orders)} children (orders {list(orders)}), got {len(children)}")
    for j, (c, r) in enumerate(zip(children, orders)):
        got = getattr(c, "critical_order", None)
        if got is not None and got != r:
            raise ValueError(f"child S{j + 1} is {got}-critical but the slot needs order {r}")


def _join_sides(c1: Graph, c2: Graph) -> Graph:
    g, (o1, o2) = disjoint_union([c1, c2], ["C1", "C2"])
    join_complete_bipartite(g, [o1 + a for a in c1.blocks["active"]], [o2 + a for a in c2.blocks["active"]])
    g.parts = {"sides": [c1, c2], "offsets": [o1, o2]}
    return g


def build_Gk(k: int, sides: tuple[Sequence[Graph], Sequence[Graph]] | None = None, catalog: "BaseCatalog | None" = None) -> Graph:
    """Triangle-free k-critical graph: U^{k-1}_{ceil(k/2)+1} and
    U^{k-1}_{floor(k/2)+1} with their active sets joined completely.

    ``sides`` gives the children ``S_1, S_2, ...`` of each side (orders
    ``k-1, k-2, ...``); missing sides come from ``catalog``.
    """
    if k < 4:
        raise ValueError("G_k needs k >= 4")
    i1, i2 = k // 2, (k + 1) // 2
    orders = (u_orders(k, i1), u_orders(k, i2))
    catalog = catalog or BaseCatalog()
    if sides is None:
        sides = ([catalog.get(r) for r in orders[0]], [catalog.get(r) for r in orders[1]])
    for s, o in zip(sides, orders):
        _check_children(s, o)
    c1, c2 = build_U(sides[0]), build_U(sides[1])
    g = _join_sides(c1, c2)
    g.spec = ConstructionSpec("Gk", {"k": k}, [c1.spec, c2.spec])
    g.critical_order = k
    g.parts.update({"k": k, "i": [i1, i2], "family": "U"})
    return g


# ---------------------------------------------------------------------
# pentagon-free machinery


def m_deleted(h: Graph, r: int, k: int, policy: str = "greedy", budget: Budget | None = None) -> Graph:
    """Type-2-minimal subgraph of ``doubling(h)`` forcing ``r`` forward colors.

    ``h`` must be (k-1)-critical.  Type-2 edges are scanned in ascending
    order and each is deleted when every (k-1)-coloring still puts at least
    ``r`` colors on the forward set.  A failed deletion stays failed after
    later deletions, so one pass gives the same result as restarting the
    scan.  Forward vertices left isolated are dropped and ids compacted.
    ``policy="skip"`` returns the doubling itself and is only valid for
    ``r = k-1``.
    """
    if not 2 <= r <= k - 1:
        raise ValueError(f"r must satisfy 2 <= r <= k-1, got r={r}, k={k}")
    if policy not in ("greedy", "skip"):
        raise ValueError(f"unknown deletion policy {policy!r}")
    if policy == "skip" and r != k - 1:
        raise ValueError("skip policy is only valid for r = k-1")
    order = getattr(h, "critical_order", None)
    if order is not None and order != k - 1:
        raise ValueError(f"base graph is {order}-critical, expected {k - 1}")
    d = doubling(h)
    removed: list[tuple[int, int]] = []
    if policy == "greedy":
        budget = budget or Budget()
        fwd = d.blocks["forward"]
        low = list(range(1, r))
        for e in type2_edges(d):
            d.remove_edge(*e)
            dec = decide_colorable(d, ColorConstraint(k - 1).restrict(fwd, low), budget)
            if dec.unknown:
                raise BudgetExhausted(f"deletion check for edge {e} ran out of budget")
            if dec.no:
                removed.append(e)
            else:
                d.add_edge(*e)
    n0 = h.n
    keep = list(range(n0)) + [v for v in range(n0, 2 * n0) if d.degree(v) > 0]
    g, _ = d.induced_subgraph(keep)
    new_id = {v: i for i, v in enumerate(keep)}
    g.set_block("base", range(n0))
    g.set_block("forward", [new_id[v] for v in keep[n0:]])
    g.spec = ConstructionSpec("mdeleted", {"r": r, "k": k, "policy": policy}, [_spec_of(h)])
    g.critical_order = None
    g.parts = {
        "base": h,
        "r": r,
        "k": k,
        "policy": policy,
        "origin": {new_id[v]: v - n0 for v in keep[n0:]},
        "removed": removed,
    }
    return g


_MD_CACHE: dict[str, Graph] = {}


def _m_deleted_cached(h: Graph, r: int, k: int, budget: Budget | None) -> Graph:
    policy = "skip" if r == k - 1 else "greedy"
    key = f"{_spec_of(h).key()}|{r}|{k}|{policy}"
    if key not in _MD_CACHE:
        _MD_CACHE[key] = m_deleted(h, r, k, policy, budget)
    return _MD_CACHE[key]


def build_W(k: int, rs: Sequence[int], bases: Sequence[Graph], budget: Budget | None = None) -> Graph:
    """Paste ``M^{r_i}_{k-1}`` graphs onto the product of their forward sets."""
    rs = list(rs)
    if len(bases) != len(rs):
        raise ValueError("one base graph per r is required")
    ms = [_m_deleted_cached(b, r, k, budget) for b, r in zip(bases, rs)]
    w = build_U(ms, [m.blocks["forward"] for m in ms], mode="W")
    w.spec = ConstructionSpec("W", {"k": k, "rs": rs}, [_spec_of(b) for b in bases])
    w.parts["k"] = k
    w.parts["rs"] = rs
    return w


def _g5k_from_sides(k: int, c1: Graph, c2: Graph) -> Graph:
    g = _join_sides(c1, c2)
    g.spec = ConstructionSpec("G5k", {"k": k}, [c1.spec, c2.spec])
    g.critical_order = k
    g.parts.update({"k": k, "i": [k // 2, (k + 1) // 2], "family": "W"})
    return g


def build_G5k(k: int, m: int = 7, base: Graph | None = None, catalog: "BaseCatalog | None" = None, budget: Budget | None = None) -> Graph:
    """Pentagon-and-triangle-free k-critical graph from two W-sides.

    ``base`` is the (k-1)-critical graph ``M_{k-1}`` (odd-girth >= 7); by
    default ``C_m`` for k = 4 and a recursive G5_{k-1} otherwise.
    """
    if k < 4:
        raise ValueError("G5_k needs k >= 4")
    if base is None:
        base = (catalog or BaseCatalog("pentagon", m)).get(k - 1)
    i1, i2 = k // 2, (k + 1) // 2
    c1 = build_W(k, u_orders(k, i1), [base] * (i1 - 1), budget)
    c2 = build_W(k, u_orders(k, i2), [base] * (i2 - 1), budget)
    return _g5k_from_sides(k, c1, c2)


# ---------------------------------------------------------------------
# Gyarfas, odd-girth family, cones


def gyarfas(m: int = 5) -> Graph:
    """Four U(4)'s over Toft graphs chained by complete joins, with an apex on both ends."""
    _check_odd(m, 5)
    us = [build_U([toft(m)]) for _ in range(4)]
    g, offs = disjoint_union(us, [f"U{i + 1}" for i in range(4)])
    actives = [[o + a for a in u.blocks["active"]] for u, o in zip(us, offs)]
    for i in range(3):
        join_complete_bipartite(g, actives[i], actives[i + 1])
    x = g.add_vertex(APEX)
    for a in actives[0] + actives[3]:
        g.add_edge(x, a)
    for i in range(4):
        g.set_block(f"A{i + 1}", actives[i])
        g.set_block(f"T{i + 1}", [offs[i] + v for v in us[i].parts["plugs"][0]])
    g.set_block("x", [x])
    g.spec = ConstructionSpec("gyarfas", {"m": m})
    g.critical_order = 5
    g.parts = {"sides": us, "offsets": offs}
    return g


def _check_ogt(q: int, m: int) -> None:
    if q < 1:
        raise ValueError("q must be at least 1")
    _check_odd(m, 2 * q + 5)


def build_Y(q: int, m: int) -> Graph:
    """``mu^q(C_m)`` with its top layer matched to a new independent set."""
    _check_ogt(q, m)
    base = mu_q(odd_cycle(m), q)
    top = base.blocks["active"]
    for v in top:
        base.roles[v] = FORWARD
    start = base.n
    for _ in top:
        base.add_vertex(ACTIVE)
    new = list(range(start, base.n))
    join_matching(base, top, new)
    base.set_block("plug", top)
    base.set_block("active", new)
    base.spec = ConstructionSpec("Y", {"q": q, "m": m})
    base.critical_order = None
    base.parts = {"q": q, "m": m}
    return base


def ogt_graph(q: int, m: int) -> Graph:
    """Two copies of Y with their new independent sets joined completely (odd-girth 2q+5 at m=2q+5)."""
    y1, y2 = build_Y(q, m), build_Y(q, m)
    g, (o1, o2) = disjoint_union([y1, y2], ["Y1", "Y2"])
    join_complete_bipartite(g, [o1 + a for a in y1.blocks["active"]], [o2 + a for a in y2.blocks["active"]])
    g.spec = ConstructionSpec("ogt", {"q": q, "m": m})
    g.critical_order = 4
    g.parts = {"sides": [y1, y2], "offsets": [o1, o2]}
    return g


def cone(h: Graph, q: int) -> Graph:
    """``mu^q(h)`` plus an apex joined to the active (top) layer."""
    g = mu_q(h, q)
    x = g.add_vertex(APEX)
    for a in g.blocks["active"]:
        g.add_edge(x, a)
    g.set_block("apex", [x])
    g.spec = ConstructionSpec("cone", {"q": q}, [_spec_of(h)])
    g.critical_order = None
    return g


# ---------------------------------------------------------------------
# catalog


class BaseCatalog:
    """Default critical building blocks by order.

    Triangle mode: ``r=3`` odd cycles (``m >= 5``); ``r=4`` the Grötzsch
    graph, or Toft graphs with ``family="toft"``; ``r>=5`` iterated
    Mycielskians of ``C_5`` (``family="gk"`` gives recursive G_r).
    Pentagon mode: ``r=3`` odd cycles with ``m >= 7``; ``r>=4`` G5_r.
    """

    def __init__(self, mode: str = "triangle", m: int | None = None):
        if mode not in ("triangle", "pentagon"):
            raise ValueError(f"unknown catalog mode {mode!r}")
        self.mode = mode
        self.m = m if m is not None else (5 if mode == "triangle" else 7)
        _check_odd(self.m, 5 if mode == "triangle" else 7)
        self._cache: dict = {}

    def get(self, r: int, family: str | None = None, size=None) -> Graph:
        key = (r, family, size if not isinstance(size, list) else tuple(size))
        if key not in self._cache:
            self._cache[key] = self._make(r, family, size)
        return self._cache[key]

    def _make(self, r: int, family: str | None, size) -> Graph:
        if r < 3:
            raise ValueError("catalog orders start at 3")
        if self.mode == "pentagon":
            if r == 3:
                m = size or self.m
                _check_odd(m, 7)
                return odd_cycle(m)
            return build_G5k(r, m=self.m, catalog=self)
        if r == 3:
            return odd_cycle(size or self.m)
        if r == 4:
            family = family or "grotzsch"
            if family == "grotzsch":
                return grotzsch()
            if family == "toft":
                if isinstance(size, (tuple, list)):
                    return toft(size[0], size[1])
                return toft(size or self.m)
            if family == "mycielski":
                return mycielski(odd_cycle(size or self.m))
            raise ValueError(f"unknown order-4 family {family!r}")
        family = family or "mycielski"
        if family == "mycielski":
            g = odd_cycle(size or self.m)
            for _ in range(r - 3):
                g = mycielski(g)
            return g
        if family == "gk":
            return build_Gk(r, catalog=self)
        raise ValueError(f"unknown family {family!r} for order {r}")
