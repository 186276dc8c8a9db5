"""Clause-learning search for list colorings.

Boolean variable ``x(v, c) = v*k + c`` means "vertex v gets color c".  The
formula is the direct encoding: one at-least-one clause per vertex over its
allowed colors and an implicit binary clause ``-x(u,c) | -x(w,c)`` per edge
and color.  Neither family is stored explicitly; both are propagated from
counters and adjacency.  Learned clauses use two watched literals.

Literals are ``2*var`` (positive) and ``2*var + 1`` (negated).
"""

from __future__ import annotations

import heapq
import time

UNASSIGNED = 2

SAT = "yes"
UNSAT = "no"
UNKNOWN = "unknown"


def _luby(i: int) -> int:
    # 1-based Luby sequence
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


class ColoringSearch:
    """One list-coloring problem: ``adj`` (neighbor lists), palette size ``k``,
    per-vertex allowed color lists ``domains`` and optional level-0 units
    ``forced`` (vertex -> color)."""

    def __init__(self, adj, k, domains, forced=None, heuristic="dsatur"):
        n = len(adj)
        self.n, self.k = n, k
        self.adj = adj
        self.heuristic = heuristic
        nv = n * k
        self.value = bytearray([UNASSIGNED]) * nv
        self.level = [0] * nv
        self.reason = [None] * nv
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.watches: list[list] = [[] for _ in range(2 * nv)]
        self.learnts: list[list[int]] = []
        self.colored = [0] * n
        self.free = [0] * n
        self.alo = []
        self.activity = [0.0] * n
        self.var_inc = 1.0
        self.phase = [-1] * n
        self.degree = [len(a) for a in adj]
        self.conflicts = 0
        self.decisions = 0
        self.ok = True
        self.seen = bytearray(nv)

        value = self.value
        for v in range(n):
            dom = sorted(set(domains[v]))
            self.alo.append(tuple(2 * (v * k + c) for c in dom))
            self.free[v] = len(dom)
            allowed = set(dom)
            for c in range(k):
                if c not in allowed:
                    value[v * k + c] = 0
            if not dom:
                self.ok = False
        self._heap = [(-0.0, -self.degree[v], v) for v in range(n)]
        heapq.heapify(self._heap)
        if self.ok and forced:
            for v, c in forced.items():
                var = v * k + c
                if value[var] == 0:
                    self.ok = False
                    break
                if value[var] == UNASSIGNED:
                    self._assign(2 * var, None)
            if self.ok and self._propagate() is not None:
                self.ok = False

    # -- assignment ----------------------------------------------------
    def _assign(self, lit, reason):
        var = lit >> 1
        self.value[var] = 1 - (lit & 1)
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)
        v = var // self.k
        if lit & 1:
            self.free[v] -= 1
        else:
            self.colored[v] += 1

    def _cancel_until(self, lvl):
        if len(self.trail_lim) <= lvl:
            return
        trail = self.trail
        stop = self.trail_lim[lvl]
        value, k = self.value, self.k
        free, colored, phase = self.free, self.colored, self.phase
        heap, act, deg = self._heap, self.activity, self.degree
        for idx in range(len(trail) - 1, stop - 1, -1):
            lit = trail[idx]
            var = lit >> 1
            value[var] = UNASSIGNED
            v = var // k
            if lit & 1:
                free[v] += 1
            else:
                colored[v] -= 1
                phase[v] = var - v * k
                if colored[v] == 0:
                    heapq.heappush(heap, (-act[v], -deg[v], v))
        del trail[stop:]
        del self.trail_lim[lvl:]
        self.qhead = len(trail)

    # -- propagation ---------------------------------------------------
    def _propagate(self):
        trail, value, k, adj = self.trail, self.value, self.k, self.adj
        watches, colored, free, alo = self.watches, self.colored, self.free, self.alo
        level, reason = self.level, self.reason
        trail_lim = self.trail_lim
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            var = p >> 1
            v, c = divmod(var, k)
            cur = len(trail_lim)
            if not p & 1:
                # v took color c: exclude c from every neighbor
                for w in adj[v]:
                    wv = w * k + c
                    val = value[wv]
                    if val == UNASSIGNED:
                        lit = 2 * wv + 1
                        value[wv] = 0
                        level[wv] = cur
                        reason[wv] = (lit, 2 * var + 1)
                        trail.append(lit)
                        free[w] -= 1
                    elif val == 1:
                        return [2 * var + 1, 2 * wv + 1]
            elif colored[v] == 0:
                f = free[v]
                if f == 0:
                    return list(alo[v])
                if f == 1:
                    for q in alo[v]:
                        if value[q >> 1] == UNASSIGNED:
                            self._assign(q, alo[v])
                            break
            # learned clauses watching the literal that just became false
            false_lit = p ^ 1
            ws = watches[false_lit]
            if not ws:
                continue
            i = j = 0
            nws = len(ws)
            while i < nws:
                cl = ws[i]
                i += 1
                if not cl:
                    continue
                if cl[0] == false_lit:
                    cl[0], cl[1] = cl[1], false_lit
                first = cl[0]
                fv = value[first >> 1]
                if fv != UNASSIGNED and fv ^ (first & 1) == 1:
                    ws[j] = cl
                    j += 1
                    continue
                for t in range(2, len(cl)):
                    q = cl[t]
                    qv = value[q >> 1]
                    if qv == UNASSIGNED or qv ^ (q & 1) == 1:
                        cl[1], cl[t] = q, false_lit
                        watches[q].append(cl)
                        break
                else:
                    ws[j] = cl
                    j += 1
                    if fv != UNASSIGNED:
                        while i < nws:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        return cl
                    self._assign(first, cl)
            del ws[j:]
        return None

    # -- conflict analysis ---------------------------------------------
    def _bump(self, v):
        act = self.activity
        act[v] += self.var_inc
        if act[v] > 1e100:
            for i in range(self.n):
                act[i] *= 1e-100
            self.var_inc *= 1e-100
        if self.colored[v] == 0 and self.heuristic == "vsids":
            heapq.heappush(self._heap, (-act[v], -self.degree[v], v))

    def _analyze(self, confl):
        seen, level, reason, trail, k = self.seen, self.level, self.reason, self.trail, self.k
        cur = len(self.trail_lim)
        learnt = [0]
        touched = []
        counter = 0
        idx = len(trail) - 1
        pvar = -1
        p = 0
        while True:
            for q in confl:
                var = q >> 1
                if var == pvar or seen[var]:
                    continue
                lv = level[var]
                if lv == 0:
                    continue
                seen[var] = 1
                touched.append(var)
                self._bump(var // k)
                if lv == cur:
                    counter += 1
                else:
                    learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            pvar = p >> 1
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            confl = reason[pvar]
        learnt[0] = p ^ 1
        # drop literals implied by the rest of the clause
        if len(learnt) > 2:
            keep = [learnt[0]]
            for q in learnt[1:]:
                r = reason[q >> 1]
                if r is None or any(not seen[x >> 1] and level[x >> 1] > 0 for x in r if x >> 1 != q >> 1):
                    keep.append(q)
            learnt = keep
        for var in touched:
            seen[var] = 0
        if len(learnt) == 1:
            bt = 0
        else:
            mi = max(range(1, len(learnt)), key=lambda t: level[learnt[t] >> 1])
            learnt[1], learnt[mi] = learnt[mi], learnt[1]
            bt = level[learnt[1] >> 1]
        self.var_inc /= 0.95
        return learnt, bt

    # -- decisions -----------------------------------------------------
    def _pick_vertex(self):
        colored = self.colored
        if self.heuristic == "vsids":
            heap = self._heap
            while heap:
                _, _, v = heapq.heappop(heap)
                if colored[v] == 0:
                    return v
            return -1
        # saturation first (fewest remaining colors), activity then degree break ties
        best, bkey = -1, None
        free, act, deg = self.free, self.activity, self.degree
        for v in range(self.n):
            if colored[v] == 0:
                key = (-free[v], act[v], deg[v])
                if bkey is None or key > bkey:
                    best, bkey = v, key
        return best

    def _pick_color(self, v):
        k, value = self.k, self.value
        c = self.phase[v]
        if c >= 0 and value[v * k + c] == UNASSIGNED:
            return c
        for q in self.alo[v]:
            if value[q >> 1] == UNASSIGNED:
                return (q >> 1) - v * k
        raise AssertionError("decision vertex has no open color")

    def _reduce_db(self):
        locked = {id(r) for r in self.reason if type(r) is list}
        self.learnts.sort(key=len)
        half = len(self.learnts) // 2
        keep = self.learnts[:half]
        for cl in self.learnts[half:]:
            if len(cl) <= 3 or id(cl) in locked:
                keep.append(cl)
            else:
                cl.clear()
        self.learnts = keep

    # -- main loop -----------------------------------------------------
    def solve(self, max_nodes=None, deadline=None):
        """Return ``(status, coloring)`` where coloring is a list of 0-based colors."""
        if not self.ok:
            return UNSAT, None
        if self._propagate() is not None:
            return UNSAT, None
        restart_i = 1
        budget = 100 * _luby(restart_i)
        since_restart = 0
        next_reduce = 2000
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                since_restart += 1
                if not self.trail_lim:
                    return UNSAT, None
                learnt, bt = self._analyze(confl)
                self._cancel_until(bt)
                if len(learnt) == 1:
                    self._assign(learnt[0], None)
                else:
                    self.watches[learnt[0]].append(learnt)
                    self.watches[learnt[1]].append(learnt)
                    self.learnts.append(learnt)
                    self._assign(learnt[0], learnt)
                if self.conflicts & 255 == 0:
                    if deadline is not None and time.monotonic() > deadline:
                        return UNKNOWN, None
                if max_nodes is not None and self.conflicts + self.decisions > max_nodes:
                    return UNKNOWN, None
                if len(self.learnts) > next_reduce:
                    self._reduce_db()
                    next_reduce += 500
                continue
            if since_restart >= budget:
                since_restart = 0
                restart_i += 1
                budget = 100 * _luby(restart_i)
                self._cancel_until(0)
                continue
            v = self._pick_vertex()
            if v < 0:
                return SAT, self._model()
            c = self._pick_color(v)
            self.decisions += 1
            if max_nodes is not None and self.decisions & 1023 == 0:
                if self.conflicts + self.decisions > max_nodes:
                    return UNKNOWN, None
                if deadline is not None and time.monotonic() > deadline:
                    return UNKNOWN, None
            self.trail_lim.append(len(self.trail))
            self._assign(2 * (v * self.k + c), None)

    def _model(self):
        k, value = self.k, self.value
        out = []
        for v in range(self.n):
            for c in range(k):
                if value[v * k + c] == 1:
                    out.append(c)
                    break
            else:
                raise AssertionError(f"vertex {v} left uncolored")
        return out
