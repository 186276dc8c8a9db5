"""Exact constrained coloring: decisions, chromatic number, subset color
minima and edge-criticality reports.

Colors in this module's public API are ``1..k``.  Every ``yes`` answer
comes with a witness that has been re-checked by :func:`verify_witness`.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ._engine import SAT, UNKNOWN, UNSAT, ColoringSearch
from .graph import Graph, odd_girth

__all__ = [
    "Budget",
    "ColorConstraint",
    "ColoringWitness",
    "Decision",
    "ChromaticResult",
    "SubsetColorsResult",
    "CriticalityReport",
    "EdgeStatus",
    "BudgetExhausted",
    "decide_colorable",
    "chromatic_number",
    "min_colors_on_subset",
    "is_k_critical",
    "verify_witness",
    "greedy_dsatur",
]

YES, NO = SAT, UNSAT


class BudgetExhausted(RuntimeError):
    """Raised by callers that cannot proceed on an ``unknown`` answer."""


@dataclass(frozen=True)
class Budget:
    """Per-decision resource limit: search nodes (decisions + conflicts) and wall clock."""

    max_nodes: int | None = 10**7
    max_seconds: float | None = 60.0

    @classmethod
    def from_env(cls, var: str = "CRITGRAPH_BUDGET") -> "Budget":
        """Read ``NODES[:SECONDS]`` from the environment, falling back to the defaults."""
        raw = os.environ.get(var)
        if not raw:
            return cls()
        nodes, _, secs = raw.partition(":")
        return cls(int(float(nodes)) if nodes else cls.max_nodes, float(secs) if secs else cls.max_seconds)

    def to_dict(self) -> dict:
        return {"maxNodes": self.max_nodes, "maxSeconds": self.max_seconds}


UNLIMITED = Budget(None, None)


@dataclass
class ColorConstraint:
    """Palette size plus palette restrictions on vertex subsets and forced colors."""

    k: int
    subset_palettes: list[tuple[frozenset[int], frozenset[int]]] = field(default_factory=list)
    forced: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("palette size must be at least 1")
        self.subset_palettes = [(frozenset(s), frozenset(p)) for s, p in self.subset_palettes]
        for _, pal in self.subset_palettes:
            if not pal <= set(range(1, self.k + 1)):
                raise ValueError(f"palette {sorted(pal)} not within 1..{self.k}")
        for v, c in self.forced.items():
            if not 1 <= c <= self.k:
                raise ValueError(f"forced color {c} for vertex {v} not within 1..{self.k}")

    def restrict(self, vertices: Iterable[int], palette: Iterable[int]) -> "ColorConstraint":
        return ColorConstraint(self.k, self.subset_palettes + [(frozenset(vertices), frozenset(palette))], dict(self.forced))

    def force(self, v: int, color: int) -> "ColorConstraint":
        forced = dict(self.forced)
        forced[v] = color
        return ColorConstraint(self.k, list(self.subset_palettes), forced)

    @property
    def symmetric(self) -> bool:
        return not self.subset_palettes and not self.forced

    def domains(self, n: int) -> list[set[int]]:
        doms = [set(range(1, self.k + 1)) for _ in range(n)]
        for vs, pal in self.subset_palettes:
            for v in vs:
                if not 0 <= v < n:
                    raise ValueError(f"constraint vertex {v} out of range")
                doms[v] &= pal
        for v, c in self.forced.items():
            if not 0 <= v < n:
                raise ValueError(f"forced vertex {v} out of range")
            doms[v] &= {c}
        return doms

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "subsetPalettes": [{"vertices": sorted(s), "palette": sorted(p)} for s, p in self.subset_palettes],
            "forcedColors": {str(v): c for v, c in sorted(self.forced.items())},
        }


@dataclass
class ColoringWitness:
    """A coloring ``assignment[v] in 1..k``.

    Witnesses produced by the proof-driven generators also name the
    ``clause`` they certify and carry its constraint ``profile``.
    """

    assignment: list[int]
    k: int
    clause: str | None = None
    profile: dict | None = None

    def colors_on(self, vs: Iterable[int]) -> set[int]:
        return {self.assignment[v] for v in vs}

    def to_dict(self) -> dict:
        d = {"k": self.k, "assignment": list(self.assignment)}
        if self.clause is not None:
            d["clause"] = self.clause
        if self.profile is not None:
            d["constraintProfile"] = self.profile
        return d


@dataclass
class Decision:
    status: str  # "yes" | "no" | "unknown"
    witness: ColoringWitness | None = None
    nodes: int = 0
    seconds: float = 0.0

    @property
    def yes(self) -> bool:
        return self.status == YES

    @property
    def no(self) -> bool:
        return self.status == NO

    @property
    def unknown(self) -> bool:
        return self.status == UNKNOWN


def verify_witness(g: Graph, w: ColoringWitness, c: ColorConstraint | None = None) -> bool:
    a = w.assignment
    if len(a) != g.n:
        return False
    k = w.k if c is None else c.k
    if any(not (1 <= x <= k) for x in a):
        return False
    for u, v in g.edges():
        if a[u] == a[v]:
            return False
    if c is not None:
        for vs, pal in c.subset_palettes:
            if any(a[v] not in pal for v in vs):
                return False
        for v, col in c.forced.items():
            if a[v] != col:
                return False
    return True


# ---------------------------------------------------------------------
# search plumbing


def greedy_dsatur(g: Graph) -> list[int]:
    """Heuristic DSATUR coloring (colors ``1..``); lowest id breaks ties."""
    n = g.n
    color = [0] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max((u for u in range(n) if not color[u]), key=lambda u: (len(sat[u]), g.degree(u), -u))
        c = 1
        while c in sat[v]:
            c += 1
        color[v] = c
        for w in g.neighbor_set(v):
            sat[w].add(c)
    return color


def _components(vertices: Sequence[int], adj: list[set[int]]) -> list[list[int]]:
    alive = set(vertices)
    comps = []
    for s in sorted(alive):
        if s not in alive:
            continue
        alive.discard(s)
        comp, stack = [s], [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in alive:
                    alive.discard(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _peel(n: int, adj: list[set[int]], doms: list[set[int]]):
    """Repeatedly strip vertices with fewer live neighbours than allowed colors.

    Such a vertex can always be colored after the rest, so it never affects
    colorability.  Returns (core vertices, peel order).
    """
    deg = [len(a) for a in adj]
    alive = [True] * n
    order = []
    stack = [v for v in range(n) if deg[v] < len(doms[v])]
    queued = set(stack)
    while stack:
        v = stack.pop()
        alive[v] = False
        order.append(v)
        for w in adj[v]:
            if alive[w]:
                deg[w] -= 1
                if w not in queued and deg[w] < len(doms[w]):
                    queued.add(w)
                    stack.append(w)
    return [v for v in range(n) if alive[v]], order


def _greedy_clique(comp: list[int], adj: list[set[int]]) -> list[int]:
    start = max(comp, key=lambda v: (len(adj[v]), -v))
    clique = [start]
    cand = set(adj[start]) & set(comp)
    while cand:
        v = max(cand, key=lambda u: (len(adj[u] & cand), -u))
        clique.append(v)
        cand &= adj[v]
    return clique


def _symmetry_units(clique: list[int], doms: dict[int, set[int]], k: int, comp: list[int]):
    """Fix colors on a clique modulo interchangeable colors.

    Two colors are interchangeable when exactly the same vertices allow them.
    Returns (forced units, extra domain restriction or None).
    """
    allow: dict[int, frozenset[int]] = {}
    for c in range(1, k + 1):
        allow[c] = frozenset(v for v in comp if c in doms[v])
    classes: dict[frozenset[int], list[int]] = {}
    for c in range(1, k + 1):
        classes.setdefault(allow[c], []).append(c)
    touched: set[int] = set()
    units: dict[int, int] = {}
    for v in clique:
        reps = set()
        for cols in classes.values():
            free = [c for c in cols if c not in touched]
            if free and free[0] in doms[v]:
                reps.add(free[0])
        cand = reps & doms[v]
        if len(cand) == 1:
            (c,) = cand
            units[v] = c
            touched.add(c)
            continue
        if cand and cand != doms[v]:
            return units, (v, cand)
        break
    return units, None


def _solve_component(comp, adj, doms, forced, k, nodes_left, deadline, heuristic):
    index = {v: i for i, v in enumerate(comp)}
    local_adj = [[index[w] for w in adj[v] if w in index] for v in comp]
    local_doms = [sorted(c - 1 for c in doms[v]) for v in comp]
    local_forced = {index[v]: c - 1 for v, c in forced.items() if v in index}
    clique = _greedy_clique(comp, adj)
    units, narrow = _symmetry_units(clique, {v: doms[v] for v in comp}, k, comp)
    for v, c in units.items():
        local_forced.setdefault(index[v], c - 1)
    if narrow is not None:
        v, cand = narrow
        local_doms[index[v]] = sorted(c - 1 for c in cand)
    search = ColoringSearch(local_adj, k, local_doms, local_forced, heuristic=heuristic)
    status, model = search.solve(max_nodes=nodes_left, deadline=deadline)
    used = search.conflicts + search.decisions
    if status != SAT:
        return status, None, used
    return status, {v: model[i] + 1 for i, v in enumerate(comp)}, used


def decide_colorable(g: Graph, c: ColorConstraint | int, budget: Budget | None = None, heuristic: str = "dsatur") -> Decision:
    """Decide whether ``g`` has a proper coloring satisfying ``c``.

    ``c`` may be a bare palette size.  ``no`` means the search space was
    exhausted; ``unknown`` is returned only when the budget ran out.
    """
    if isinstance(c, int):
        c = ColorConstraint(c)
    budget = budget or Budget()
    t0 = time.monotonic()
    deadline = None if budget.max_seconds is None else t0 + budget.max_seconds
    n = g.n
    doms = c.domains(n)
    if any(not d for d in doms):
        return Decision(NO, seconds=time.monotonic() - t0)
    for v, col in c.forced.items():
        for w in g.neighbor_set(v):
            if c.forced.get(w) == col:
                return Decision(NO, seconds=time.monotonic() - t0)
    adj = [g.neighbor_set(v) for v in range(n)]
    core, peeled = _peel(n, adj, doms)
    colors: dict[int, int] = {}
    nodes = 0
    for comp in _components(core, adj):
        left = None if budget.max_nodes is None else max(budget.max_nodes - nodes, 0)
        status, part, used = _solve_component(comp, adj, doms, c.forced, c.k, left, deadline, heuristic)
        nodes += used
        if status != SAT:
            return Decision(status, nodes=nodes, seconds=time.monotonic() - t0)
        colors.update(part)
    for v in reversed(peeled):
        taken = {colors[w] for w in adj[v] if w in colors}
        colors[v] = min(doms[v] - taken)
    w = ColoringWitness([colors[v] for v in range(n)], c.k)
    if not verify_witness(g, w, c):
        raise AssertionError("solver produced an invalid coloring")
    return Decision(YES, w, nodes=nodes, seconds=time.monotonic() - t0)


# ---------------------------------------------------------------------
# chromatic number


@dataclass
class ChromaticResult:
    lower: int
    upper: int
    witness: ColoringWitness | None = None

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise BudgetExhausted(f"chromatic number only bracketed: [{self.lower}, {self.upper}]")
        return self.lower

    def to_dict(self) -> dict:
        if self.exact:
            return {"mode": "exact", "value": self.lower}
        return {"mode": "bounds", "lower": self.lower, "upper": self.upper}


def chromatic_number(g: Graph, budget: Budget | None = None) -> ChromaticResult:
    if g.n < 1:
        raise ValueError("chromatic number needs at least one vertex")
    if g.num_edges == 0:
        return ChromaticResult(1, 1, ColoringWitness([1] * g.n, 1))
    greedy = greedy_dsatur(g)
    hi = max(greedy)
    best = ColoringWitness(greedy, hi)
    adj = [g.neighbor_set(v) for v in range(g.n)]
    lo = max(len(_greedy_clique(comp, adj)) for comp in _components(range(g.n), adj))
    if lo < 3 and odd_girth(g) != float("inf"):
        lo = 3
    while lo < hi:
        d = decide_colorable(g, lo, budget)
        if d.yes:
            return ChromaticResult(lo, lo, d.witness)
        if d.unknown:
            return ChromaticResult(lo, hi, best)
        lo += 1
    return ChromaticResult(hi, hi, best)


# ---------------------------------------------------------------------
# subset color minima


@dataclass
class SubsetColorsResult:
    lower: int
    upper: int
    witness: ColoringWitness | None = None

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise BudgetExhausted(f"subset color minimum only bracketed: [{self.lower}, {self.upper}]")
        return self.lower


def min_colors_on_subset(
    g: Graph,
    k: int,
    subset: Iterable[int],
    budget: Budget | None = None,
    base: ColorConstraint | None = None,
) -> SubsetColorsResult:
    """Minimum, over proper k-colorings, of the number of distinct colors on ``subset``.

    For ``t = 1, 2, ...`` we ask whether the subset can be confined to some
    t-color palette.  Without a base constraint the colors are symmetric and
    one palette per size suffices; otherwise every t-subset is tried.
    """
    s = sorted(set(subset))
    if not s:
        raise ValueError("subset must be nonempty")
    base = base or ColorConstraint(k)
    if base.k != k:
        raise ValueError("base constraint palette size differs from k")
    palette_sets = lambda t: [tuple(range(1, t + 1))] if base.symmetric else itertools.combinations(range(1, k + 1), t)
    lo = 1
    for t in range(1, min(k, len(s)) + 1):
        pending = False
        for pal in palette_sets(t):
            d = decide_colorable(g, base.restrict(s, pal), budget)
            if d.yes:
                if pending:
                    return SubsetColorsResult(lo, t, d.witness)
                return SubsetColorsResult(t, t, d.witness)
            if d.unknown:
                pending = True
        if pending:
            # cannot rule out t; keep looking for an upper bound
            for t2 in range(t + 1, min(k, len(s)) + 1):
                for pal in palette_sets(t2):
                    d = decide_colorable(g, base.restrict(s, pal), budget)
                    if d.yes:
                        return SubsetColorsResult(lo, t2, d.witness)
            return SubsetColorsResult(lo, min(k, len(s)), None)
        lo = t + 1
    raise ValueError(f"graph is not {k}-colorable under the base constraint")


# ---------------------------------------------------------------------
# criticality


@dataclass
class EdgeStatus:
    edge: tuple[int, int]
    status: str  # "removable" | "fails" | "unknown"
    nodes: int = 0


@dataclass
class CriticalityReport:
    k: int
    mode: str  # "full" | "sampled"
    intact: str  # status of the (k-1)-colorability decision on the intact graph
    per_edge: list[EdgeStatus]
    verdict: str  # "k-critical" | "not-critical" | "inconclusive" | "sampled-pass"
    witness_edge: tuple[int, int] | None = None
    sample_count: int | None = None
    seed: int | None = None
    total_edges: int = 0

    @property
    def critical(self) -> bool:
        return self.verdict == "k-critical"

    def to_dict(self) -> dict:
        d = {
            "k": self.k,
            "mode": self.mode,
            "intactColorableWithKMinus1": self.intact,
            "verdict": self.verdict,
            "checkedEdges": len(self.per_edge),
            "totalEdges": self.total_edges,
            "perEdge": [{"edge": list(e.edge), "status": e.status} for e in self.per_edge],
        }
        if self.witness_edge is not None:
            d["witnessEdge"] = list(self.witness_edge)
        if self.mode == "sampled":
            d["sampleCount"] = self.sample_count
            d["seed"] = self.seed
        return d


def _edge_job(args):
    g, k, e, budget = args
    d = decide_colorable(g.without_edge(*e), k - 1, budget)
    status = {YES: "removable", NO: "fails", UNKNOWN: "unknown"}[d.status]
    return EdgeStatus(e, status, d.nodes)


def is_k_critical(
    g: Graph,
    k: int,
    mode: str = "full",
    budget: Budget | None = None,
    samples: int = 100,
    seed: int | None = None,
    edges: Sequence[tuple[int, int]] | None = None,
    jobs: int = 1,
) -> CriticalityReport:
    """Check that ``g`` is not (k-1)-colorable but every ``g - e`` is.

    ``mode="sampled"`` checks ``samples`` edges drawn with ``seed`` and can
    at best return ``"sampled-pass"``.  ``edges`` restricts the per-edge
    loop to an explicit list (reported as sampled).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if mode not in ("full", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    budget = budget or Budget()
    all_edges = g.edges()
    if edges is not None:
        chosen = [tuple(sorted(e)) for e in edges]
        mode = "sampled"
    elif mode == "sampled":
        if seed is None:
            raise ValueError("sampled mode needs an explicit seed")
        rng = random.Random(seed)
        chosen = sorted(rng.sample(all_edges, min(samples, len(all_edges))))
    else:
        chosen = all_edges
    intact = decide_colorable(g, k - 1, budget)
    report = CriticalityReport(k, mode, intact.status, [], "inconclusive", sample_count=len(chosen) if mode == "sampled" else None, seed=seed, total_edges=len(all_edges))
    if intact.yes:
        report.verdict = "not-critical"
        return report
    jobs_args = [(g, k, e, budget) for e in chosen]
    if jobs > 1 and len(chosen) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            statuses = list(pool.map(_edge_job, jobs_args, chunksize=max(1, len(chosen) // (4 * jobs))))
    else:
        statuses = []
        for a in jobs_args:
            st = _edge_job(a)
            statuses.append(st)
            if st.status == "fails":
                break
    report.per_edge = statuses
    failing = [s for s in statuses if s.status == "fails"]
    if failing:
        report.verdict = "not-critical"
        report.witness_edge = failing[0].edge
    elif intact.unknown or any(s.status == "unknown" for s in statuses):
        report.verdict = "inconclusive"
    elif mode == "full":
        report.verdict = "k-critical"
    else:
        report.verdict = "sampled-pass"
    return report
