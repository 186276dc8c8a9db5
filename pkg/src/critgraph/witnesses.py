"""Colorings read off the inductive proofs, built without search.

The active-set pasting ``U(S_1, ..., S_t)`` with children of orders
``k-1, k-2, ..., k-t`` (or the forward-set variant ``W`` over doubled
graphs) admits three kinds of ``(k-1)``-colorings:

* ``part1``: at most ``t+1`` colors on the actives, color ``t+1`` at a
  single active vertex chosen by the caller;
* ``part3``: after deleting any one edge, at most ``t`` colors on the actives;
* the side-by-side combinations of these used for ``G_k``.

The recursion walks down the coordinates of the active set: level ``j``
is the sub-pasting over ``S_1..S_j`` obtained by fixing the coordinates of
the later children.  Children are colored first, then actives greedily.

Base graphs enter only through two primitives, a coloring in which the top
color sits on one chosen vertex and a coloring of the graph minus an edge
with one color fewer.  Both come from explicit rules for odd cycles and for
``G_k``-type graphs (recursively); anything else falls back to exact search,
cached per graph and vertex (or edge).
"""

from __future__ import annotations

import itertools
import threading
from typing import Sequence

from .colorer import Budget, BudgetExhausted, ColorConstraint, ColoringWitness, decide_colorable, verify_witness
from .constructions import active_coords, active_index
from .graph import Graph

__all__ = [
    "color_avoiding_vertex",
    "color_minus_edge",
    "extend_to_active",
    "color_U_part1",
    "color_U_part3",
    "color_Gk",
    "witness_for",
    "clear_cache",
]

_cache: dict[tuple, list[int]] = {}
_lock = threading.Lock()


def clear_cache() -> None:
    with _lock:
        _cache.clear()


def _cached(key, make):
    if key is not None:
        with _lock:
            hit = _cache.get(key)
        if hit is not None:
            return list(hit)
    value = make()
    if key is not None:
        with _lock:
            _cache.setdefault(key, list(value))
    return value


def _spec_key(g: Graph):
    return g.spec.key() if g.spec is not None else None


def _is_gk_like(g: Graph) -> bool:
    return "sides" in g.parts and g.parts.get("family") in ("U", "W")


def _order(g: Graph) -> int:
    r = g.critical_order
    if r is None:
        raise ValueError(f"{g!r} has no known criticality order")
    return r


# ---------------------------------------------------------------------
# base-graph primitives (colors 1..r)


def _cycle_avoid(m: int, v: int) -> list[int]:
    col = [0] * m
    col[v] = 3
    for step in range(1, m):
        col[(v + step) % m] = 1 if step % 2 else 2
    return col


def _cycle_minus_edge(m: int, e: tuple[int, int]) -> list[int]:
    a, b = e
    if (a + 1) % m != b:
        a, b = b, a
    if (a + 1) % m != b:
        raise ValueError(f"{e} is not an edge of C_{m}")
    # walk the path b, b+1, ..., a
    col = [0] * m
    for step in range(m):
        col[(b + step) % m] = 1 + step % 2
    return col


def _search(g: Graph, c: ColorConstraint, budget: Budget | None, what: str) -> list[int]:
    d = decide_colorable(g, c, budget)
    if d.unknown:
        raise BudgetExhausted(f"exact search for {what} ran out of budget")
    if d.no:
        raise ValueError(f"no coloring exists for {what}; is the graph critical?")
    return d.witness.assignment


def _avoid(s: Graph, v: int, budget: Budget | None) -> list[int]:
    """Proper ``r``-coloring of the r-critical graph ``s`` with color ``r`` only at ``v``."""
    r = _order(s)
    kind = s.spec.kind if s.spec is not None else None
    if kind == "cycle":
        return _cycle_avoid(s.n, v)
    if _is_gk_like(s):
        w = min(s.neighbor_set(v))
        col = _minus_edge(s, (v, w), budget)
        col[v] = r
        return col
    key = ("avoid", _spec_key(s), v) if s.spec is not None else None

    def make():
        others = [u for u in range(s.n) if u != v]
        return _search(s, ColorConstraint(r).restrict(others, range(1, r)).force(v, r), budget, f"color {r} only at vertex {v}")

    return _cached(key, make)


def _minus_edge(s: Graph, e: tuple[int, int], budget: Budget | None) -> list[int]:
    """Proper ``(r-1)``-coloring of ``s - e`` for r-critical ``s``."""
    r = _order(s)
    if not s.has_edge(*e):
        raise ValueError(f"{e} is not an edge")
    kind = s.spec.kind if s.spec is not None else None
    if kind == "cycle":
        return _cycle_minus_edge(s.n, e)
    if _is_gk_like(s):
        return color_Gk(s, "after-removal", e, budget).assignment
    e = (min(e), max(e))
    key = ("minus", _spec_key(s), e) if s.spec is not None else None
    return _cached(key, lambda: _search(s.without_edge(*e), ColorConstraint(r - 1), budget, f"removing edge {e}"))


def color_avoiding_vertex(s: Graph, v: int, budget: Budget | None = None) -> ColoringWitness:
    """r-coloring of an r-critical graph in which color r appears only at ``v``."""
    r = _order(s)
    col = _avoid(s, v, budget)
    c = ColorConstraint(r).restrict([u for u in range(s.n) if u != v], range(1, r)).force(v, r)
    return _finish(s, col, r, c, "avoid-vertex", {"vertex": v, "color": r})


def color_minus_edge(s: Graph, e: tuple[int, int], budget: Budget | None = None) -> ColoringWitness:
    """(r-1)-coloring of ``s - e`` for an r-critical graph ``s``."""
    r = _order(s)
    col = _minus_edge(s, e, budget)
    return _finish(s.without_edge(*e), col, r - 1, ColorConstraint(r - 1), "minus-edge", {"removedEdge": list(e)})


def _finish(g: Graph, col: list[int], k: int, c: ColorConstraint, clause: str, extra: dict) -> ColoringWitness:
    profile = c.to_dict()
    profile.update(extra)
    w = ColoringWitness(list(col), k, clause, profile)
    if not verify_witness(g, w, c):
        raise AssertionError(f"generated {clause} witness failed verification")
    return w


# ---------------------------------------------------------------------
# children of a pasting: colorings in terms of their plug vertices


class _Child:
    """A child slot of a pasting, seen through its plug vertices.

    Each method returns ``(colors, special)`` for the child's own vertex ids,
    using colors ``1..k-1``; ``special`` is the color that sits on the chosen
    plug only (or ``None``).
    """

    def __init__(self, g: Graph, plugs: Sequence[int], mode: str, k: int, budget: Budget | None):
        self.g, self.plugs, self.mode, self.k, self.budget = g, list(plugs), mode, k, budget

    def avoid(self, p: int):
        g, k = self.g, self.k
        if self.mode == "U":
            return _avoid(g, p, self.budget), _order(g)
        base, origin = g.parts["base"], g.parts["origin"]
        if g.parts["policy"] == "skip":
            psi = _avoid(base, origin[p], self.budget)
            return [psi[v] if v < base.n else psi[origin[v]] for v in range(g.n)], k - 1
        r = g.parts["r"]
        key = ("w-avoid", _spec_key(g), p)
        others = [f for f in self.plugs if f != p]
        c = ColorConstraint(k - 1).restrict(others, range(1, r)).force(p, r)
        return _cached(key, lambda: _search(g, c, self.budget, f"forward color {r} only at {p}")), r

    def minus_edge(self, e: tuple[int, int]):
        g, k = self.g, self.k
        if self.mode == "U":
            return _minus_edge(g, e, self.budget), None
        base, origin = g.parts["base"], g.parts["origin"]
        a, b = min(e), max(e)
        if g.parts["policy"] == "skip":
            n0 = base.n
            if b < n0:
                # original edge: the base loses a color, forward vertices share the spare one
                psi = _minus_edge(base, (a, b), self.budget)
                return [psi[v] if v < n0 else k - 1 for v in range(g.n)], None
            # edge from forward vertex b to base vertex a
            v = origin[b]
            psi = _minus_edge(base, (v, a), self.budget)
            col = [psi[u] if u < n0 else psi[origin[u]] for u in range(g.n)]
            col[v] = k - 1
            return col, None
        r = g.parts["r"]
        key = ("w-minus", _spec_key(g), (a, b))
        c = ColorConstraint(k - 1).restrict(self.plugs, range(1, r))
        return _cached(key, lambda: _search(g.without_edge(a, b), c, self.budget, f"removing {(a, b)} with {r - 1} forward colors")), None


def _relabel(col: list[int], plugs: Sequence[int], k: int, low: int, special: int | None) -> list[int]:
    """Permute colors ``1..k-1`` so that plug colors land in ``low..k-1``,
    ``special`` (if given) becoming ``low``."""
    used = sorted({col[p] for p in plugs})
    if special is not None:
        used.remove(special)
        used.insert(0, special)
    if len(used) > k - low:
        raise AssertionError(f"plugs use {len(used)} colors, only {k - low} available from {low}")
    rest = [c for c in range(1, k) if c not in used]
    src = used + rest
    dst = list(range(low, k)) + list(range(1, low))
    sigma = dict(zip(src, dst))
    return [sigma[c] for c in col]


# ---------------------------------------------------------------------
# the pasting recursion


class _Pasting:
    def __init__(self, u: Graph, k: int | None, budget: Budget | None):
        p = u.parts
        if "radix" not in p:
            raise ValueError("graph is not an active-set pasting (build_U / build_W)")
        self.u = u
        self.mode = p["mode"]
        self.t = len(p["children"])
        if k is None:
            k = p.get("k") if self.mode == "W" else _order(p["children"][0]) + 1
        self.k = k
        if self.t + 1 > k - 1:
            raise ValueError(f"a pasting with {self.t} children needs k >= {self.t + 2}")
        self.offsets = p["offsets"]
        self.children = []
        for j, (c, off, gp) in enumerate(zip(p["children"], self.offsets, p["plugs"]), start=1):
            if self.mode == "U" and c.critical_order is not None and c.critical_order != k - j:
                raise ValueError(f"child S{j} is {c.critical_order}-critical, expected {k - j}")
            self.children.append(_Child(c, [v - off for v in gp], self.mode, k, budget))
        self.plug_lists = p["plugs"]
        self.radix = p["radix"]
        self.actives = u.blocks["active"]
        self.col = [0] * u.n

    # where a vertex lives: ("child", j, local id) or ("active", coords)
    def locate(self, x: int):
        if x >= self.u.parts["active_start"]:
            return ("active", active_coords(self.u, x))
        for j in range(self.t, 0, -1):
            if x >= self.offsets[j - 1]:
                return ("child", j, x - self.offsets[j - 1])
        raise AssertionError("vertex outside the pasting")

    def paint(self, j: int, colors: list[int], low: int, special: int | None):
        ch = self.children[j - 1]
        out = _relabel(colors, ch.plugs, self.k, low, special)
        off = self.offsets[j - 1]
        self.col[off:off + ch.g.n] = out

    def sub_actives(self, j: int, suffix: tuple[int, ...]) -> list[int]:
        free = [range(r) for r in self.radix[:j]]
        return sorted(active_index(self.u, head + suffix) for head in itertools.product(*free))

    def extend(self, actives: Sequence[int], top: int):
        u, col = self.u, self.col
        for a in actives:
            if col[a]:
                continue
            taken = {col[w] for w in u.neighbor_set(a)}
            for c in range(1, top + 1):
                if c not in taken:
                    col[a] = c
                    break
            else:
                raise AssertionError(f"active vertex {a} cannot be extended within 1..{top}")

    def part1(self, j: int, target: tuple[int, ...]):
        """Level ``j``: actives use ``1..j+1``, color ``j+1`` only at ``target``."""
        for level in range(j, 0, -1):
            ch = self.children[level - 1]
            colors, special = ch.avoid(ch.plugs[target[level - 1]])
            self.paint(level, colors, level, special)
        a0 = active_index(self.u, target)
        self.col[a0] = j + 1
        self.extend(self.sub_actives(j, tuple(target[j:])), j)

    def part3(self, j: int, e: tuple[int, int], suffix: tuple[int, ...]):
        """Level ``j`` minus ``e``: actives use ``1..j``."""
        x, y = (self.locate(v) for v in e)
        if x[0] == "active":
            x, y = y, x
        if y[0] == "child":
            # both ends inside one child
            lvl = x[1]
            if lvl == j:
                colors, _ = self.children[j - 1].minus_edge((x[2], y[2]))
                self.paint(j, colors, j + 1, None)
                for level in range(j - 1, 0, -1):
                    ch = self.children[level - 1]
                    colors, _ = ch.avoid(ch.plugs[0])
                    self.paint(level, colors, level, None)
                self.extend(self.sub_actives(j, suffix), j)
                return
            omega = 0
        else:
            lvl, coords = x[1], y[1]
            if lvl == j:
                # the removed edge is the only one between the chosen active and its plug
                self.part1(j, coords)
                self.col[active_index(self.u, coords)] = j
                return
            omega = coords[j - 1]
        ch = self.children[j - 1]
        colors, special = ch.avoid(ch.plugs[omega])
        self.paint(j, colors, j, special)
        self.part3(j - 1, e, (omega,) + suffix)
        self.extend(self.sub_actives(j, suffix), j)


def extend_to_active(u: Graph, coloring: Sequence[int], palette: Sequence[int]) -> ColoringWitness:
    """Color the uncolored (0) active vertices of a pasting greedily from ``palette``.

    Children must already be colored.  Each active vertex has one neighbour
    per child, so a palette with one more color than there are children
    always suffices.
    """
    col = list(coloring)
    pal = list(palette)
    for a in u.blocks["active"]:
        if col[a]:
            continue
        taken = {col[w] for w in u.neighbor_set(a)}
        free = [c for c in pal if c not in taken]
        if not free:
            raise ValueError(f"active vertex {a} has every palette color on a neighbour")
        col[a] = free[0]
    k = max(max(col), max(pal))
    return _finish(u, col, k, ColorConstraint(k).restrict(u.blocks["active"], pal), "extend", {})


def color_U_part1(u: Graph, chosen: int, k: int | None = None, budget: Budget | None = None) -> ColoringWitness:
    """(k-1)-coloring of a pasting with ``t`` children whose actives use
    ``1..t+1`` and color ``t+1`` only at the active vertex ``chosen``."""
    s = _Pasting(u, k, budget)
    if chosen not in set(s.actives):
        raise ValueError(f"vertex {chosen} is not active")
    s.part1(s.t, active_coords(u, chosen))
    i = s.t + 1
    c = ColorConstraint(s.k - 1).restrict([a for a in s.actives if a != chosen], range(1, i)).force(chosen, i)
    return _finish(u, s.col, s.k - 1, c, "setcolor-part1", {"chosenActive": chosen, "activeColors": i})


def color_U_part3(u: Graph, edge: tuple[int, int], k: int | None = None, budget: Budget | None = None) -> ColoringWitness:
    """(k-1)-coloring of ``u - edge`` whose actives use at most ``t`` colors."""
    if not u.has_edge(*edge):
        raise ValueError(f"{edge} is not an edge")
    s = _Pasting(u, k, budget)
    s.part3(s.t, tuple(edge), ())
    c = ColorConstraint(s.k - 1).restrict(s.actives, range(1, s.t + 1))
    return _finish(u.without_edge(*edge), s.col, s.k - 1, c, "setcolor-part3", {"removedEdge": list(edge), "activeColors": s.t})


# ---------------------------------------------------------------------
# two sides joined completely


def _shift(col: list[int], by: int, mod: int) -> list[int]:
    return [(c - 1 + by) % mod + 1 for c in col]


def color_Gk(g: Graph, variant: str = "proper-k", edge: tuple[int, int] | None = None, budget: Budget | None = None) -> ColoringWitness:
    """Witness colorings for two pastings with their actives joined completely.

    ``proper-k``: a k-coloring, actives of the first side on ``1..floor(k/2)``
    and of the second on the next ``ceil(k/2)`` colors.
    ``after-removal``: a (k-1)-coloring of ``g - edge``.
    """
    if not _is_gk_like(g):
        raise ValueError("graph was not built by build_Gk / build_G5k / toft")
    k = g.parts["k"]
    c1, c2 = g.parts["sides"]
    o1, o2 = g.parts["offsets"]
    s1, s2 = _Pasting(c1, k, budget), _Pasting(c2, k, budget)
    i1, i2 = s1.t + 1, s2.t + 1
    a1, a2 = [o1 + a for a in s1.actives], [o2 + a for a in s2.actives]
    if variant == "proper-k":
        s1.part1(s1.t, active_coords(c1, s1.actives[0]))
        s2.part1(s2.t, active_coords(c2, s2.actives[0]))
        col = s1.col + _shift(s2.col, i1, k)
        c = ColorConstraint(k).restrict(a1, range(1, i1 + 1)).restrict(a2, range(i1 + 1, k + 1))
        return _finish(g, col, k, c, "gk-proper", {})
    if variant != "after-removal":
        raise ValueError(f"unknown variant {variant!r}")
    if edge is None or not g.has_edge(*edge):
        raise ValueError(f"{edge} is not an edge")
    u, v = sorted(edge)
    if v < o2:
        s1.part3(s1.t, (u - o1, v - o1), ())
        s2.part1(s2.t, active_coords(c2, s2.actives[0]))
        col = s1.col + _shift(s2.col, i1 - 1, k - 1)
        c = ColorConstraint(k - 1).restrict(a1, range(1, i1)).restrict(a2, range(i1, k))
    elif u >= o2:
        s2.part3(s2.t, (u - o2, v - o2), ())
        s1.part1(s1.t, active_coords(c1, s1.actives[0]))
        col = _shift(s1.col, i2 - 1, k - 1) + s2.col
        c = ColorConstraint(k - 1).restrict(a2, range(1, i2)).restrict(a1, range(i2, k))
    else:
        # cross edge: color i1 only at its two ends
        s1.part1(s1.t, active_coords(c1, u - o1))
        s2.part1(s2.t, active_coords(c2, v - o2))
        sigma = {i2: i1}
        sigma.update({c: i1 + c for c in range(1, i2)})
        sigma.update({c: c - i2 for c in range(i2 + 1, k)})
        col = s1.col + [sigma[x] for x in s2.col]
        c = (
            ColorConstraint(k - 1)
            .restrict([a for a in a1 if a != u], range(1, i1))
            .restrict([a for a in a2 if a != v], range(i1 + 1, k))
            .force(u, i1)
            .force(v, i1)
        )
    return _finish(g.without_edge(u, v), col, k - 1, c, "gk-after-removal", {"removedEdge": [u, v]})


def witness_for(g: Graph, clause: str, vertex: int | None = None, edge: tuple[int, int] | None = None, budget: Budget | None = None) -> ColoringWitness:
    """Dispatch by clause name: ``proper-k``, ``after-removal``, ``part1``, ``part3``, ``avoid``."""
    if clause == "proper-k":
        return color_Gk(g, "proper-k", budget=budget)
    if clause == "after-removal":
        if edge is None:
            raise ValueError("after-removal needs an edge")
        if _is_gk_like(g):
            return color_Gk(g, "after-removal", edge, budget)
        return color_minus_edge(g, edge, budget)
    if clause == "part1":
        if vertex is None:
            vertex = g.blocks["active"][0]
        return color_U_part1(g, vertex, budget=budget)
    if clause == "part3":
        if edge is None:
            raise ValueError("part3 needs an edge")
        return color_U_part3(g, edge, budget=budget)
    if clause == "avoid":
        return color_avoiding_vertex(g, 0 if vertex is None else vertex, budget)
    raise ValueError(f"unknown clause {clause!r}")
