"""Size bookkeeping for the pasting constructions and the density constants.

A set of positive integers is *positive homogeneous* when it contains every
positive multiple of some ``d``.  Finite enumeration cannot see "every", so
a :class:`HomogeneousSet` is a certificate: a modulus ``d``, a threshold
``t0`` beyond which all multiples of ``d`` are claimed, and the explicit
list of members up to an enumeration bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .constructions import BaseCatalog, build_Gk, build_U, odd_cycle, toft, u_orders
from .graph import Graph

__all__ = [
    "HomogeneousSet",
    "hs_sum",
    "hs_product",
    "hs_intersect",
    "achievable_sizes",
    "realize_size",
    "SizeMatch",
    "match_sizes",
    "optimize_ratio",
    "grid_search_ratio",
    "DENSITY_MODELS",
    "DensityTableEntry",
    "density_table",
    "format_density_table",
]

DEFAULT_BOUND = 10**4


@dataclass(frozen=True)
class HomogeneousSet:
    """Members up to ``bound`` plus the claim "all multiples of ``modulus`` above ``threshold``"."""

    modulus: int
    threshold: int
    explicit: tuple[int, ...]
    bound: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "explicit", tuple(sorted(set(self.explicit))))
        if self.explicit and (self.explicit[0] < 1 or self.explicit[-1] > self.bound):
            raise ValueError("explicit members must lie in 1..bound")

    @classmethod
    def multiples(cls, d: int, bound: int, threshold: int = 0) -> "HomogeneousSet":
        first = d * (threshold // d + 1)
        return cls(d, threshold, tuple(range(first, bound + 1, d)), bound)

    def certified(self) -> list[int]:
        """Multiples of the modulus in ``(threshold, bound]``."""
        d = self.modulus
        return list(range(d * (self.threshold // d + 1), self.bound + 1, d))

    def is_sound(self) -> bool:
        members = set(self.explicit)
        return all(x in members for x in self.certified())

    def __contains__(self, n: int) -> bool:
        if n <= self.bound:
            return n in set(self.explicit)
        return n % self.modulus == 0 and n > self.threshold

    def smallest(self) -> int | None:
        return self.explicit[0] if self.explicit else None

    def to_dict(self) -> dict:
        return {"modulus": self.modulus, "threshold": self.threshold, "explicit": list(self.explicit), "bound": self.bound}


def hs_sum(a: HomogeneousSet, b: HomogeneousSet) -> HomogeneousSet:
    """Sumset ``{x + y}``.

    With ``L = lcm(d_a, d_b)`` and ``y0`` the first multiple of ``L`` past
    ``t_b``, every multiple ``N`` of ``L`` with ``N > t_a + y0`` splits as
    ``(N - y0) + y0`` with both parts certified members.
    """
    d = math.lcm(a.modulus, b.modulus)
    y0 = d * (b.threshold // d + 1)
    bound = min(a.bound, b.bound)
    xs = np.array(a.explicit, dtype=np.int64)
    ys = np.array(b.explicit, dtype=np.int64)
    sums = (xs[:, None] + ys[None, :]).ravel() if len(xs) and len(ys) else np.array([], dtype=np.int64)
    return HomogeneousSet(d, a.threshold + y0, tuple(int(s) for s in np.unique(sums[sums <= bound])), bound)


def hs_product(a: HomogeneousSet, b: HomogeneousSet) -> HomogeneousSet:
    """Product set ``{x * y}``.

    Fixing the least member ``x0`` of one factor, ``x0`` times the certified
    multiples of the other factor's modulus are members; we keep whichever
    side gives the smaller modulus.
    """
    bound = min(a.bound, b.bound)
    options = []
    for s, o in ((a, b), (b, a)):
        if s.explicit:
            x0 = s.explicit[0]
            options.append((x0 * o.modulus, x0 * o.threshold))
    if not options:
        raise ValueError("cannot certify a product with an empty factor")
    d, t0 = min(options)
    xs = np.array(a.explicit, dtype=np.int64)
    ys = np.array(b.explicit, dtype=np.int64)
    prods = (xs[:, None] * ys[None, :]).ravel()
    return HomogeneousSet(d, t0, tuple(int(p) for p in np.unique(prods[prods <= bound])), bound)


def hs_intersect(a: HomogeneousSet, b: HomogeneousSet) -> HomogeneousSet:
    """Intersection: modulus ``lcm``, threshold the larger of the two."""
    bound = min(a.bound, b.bound)
    common = sorted(set(x for x in a.explicit if x <= bound) & set(b.explicit))
    return HomogeneousSet(math.lcm(a.modulus, b.modulus), max(a.threshold, b.threshold), tuple(common), bound)


# ---------------------------------------------------------------------
# sizes of concrete families

# Toft graphs toft(a, b) with odd a, b >= 5 have 2(a + b) vertices: every
# multiple of 4 from 20 on.
_TOFT_D, _TOFT_T = 4, 16


def _toft_params(n: int) -> tuple[int, int]:
    if n % 4 or n <= _TOFT_T:
        raise ValueError(f"no Toft graph on {n} vertices")
    s = n // 2
    half = s // 2
    return (half, half) if half % 2 else (half - 1, half + 1)


def achievable_sizes(family: str = "U", bound: int = DEFAULT_BOUND, measure: str = "vertices", fixed: Sequence[Graph] = ()) -> HomogeneousSet:
    """Sizes reachable by varying the first child of a pasting.

    ``family="toft"`` sweeps Toft graphs themselves (``measure`` vertices or
    activeVertices); ``family="U"`` sweeps ``U(toft, *fixed)``.
    """
    if measure not in ("vertices", "activeVertices"):
        raise ValueError(f"unknown measure {measure!r}")
    if family == "toft":
        if fixed:
            raise ValueError("the Toft family has no fixed children")
        d, t0 = (_TOFT_D, _TOFT_T) if measure == "vertices" else (_TOFT_D // 2, _TOFT_T // 2)
    elif family == "U":
        prod = math.prod(g.n for g in fixed)
        extra = sum(g.n for g in fixed)
        if measure == "activeVertices":
            d, t0 = _TOFT_D * prod, _TOFT_T * prod
        else:
            # n = s (1 + prod) + extra over Toft orders s = 4u, u >= 5
            step = _TOFT_D * (1 + prod)
            if extra % step:
                raise ValueError(
                    f"vertex counts of this pasting all lie in one nonzero residue class mod {step}; not positive homogeneous"
                )
            d, t0 = step, _TOFT_T * (1 + prod) + extra
    else:
        raise ValueError(f"unknown size family {family!r}")
    if bound <= t0 + d:
        raise ValueError(f"bound {bound} too small to exhibit the certificate (needs > {t0 + d})")
    explicit = []
    s = _TOFT_T + _TOFT_D
    while True:
        v = _measure(family, s, measure, fixed)
        if v > bound:
            break
        explicit.append(v)
        s += _TOFT_D
    return HomogeneousSet(d, t0, tuple(explicit), bound)


def _measure(family: str, s: int, measure: str, fixed: Sequence[Graph]) -> int:
    if family == "toft":
        return s if measure == "vertices" else s // 2
    prod = math.prod(g.n for g in fixed)
    if measure == "activeVertices":
        return s * prod
    return s + sum(g.n for g in fixed) + s * prod


def realize_size(family: str, value: int, measure: str = "vertices", fixed: Sequence[Graph] = ()) -> Graph:
    """Build a member of ``family`` whose ``measure`` equals ``value``."""
    for s in range(_TOFT_T + _TOFT_D, 10 * value + _TOFT_T + _TOFT_D, _TOFT_D):
        if _measure(family, s, measure, fixed) == value:
            t = toft(*_toft_params(s))
            return t if family == "toft" else build_U([t, *fixed])
    raise ValueError(f"{value} is not achievable in family {family!r} ({measure})")


@dataclass
class SizeMatch:
    """Children for the two sides of ``G_k`` with equal ``measure``."""

    k: int
    measure: str
    value: int
    sides: tuple[list[Graph], list[Graph]]
    verified: bool = False
    side_sizes: tuple[int, int] = (0, 0)
    certificate: HomogeneousSet | None = None

    def build(self) -> Graph:
        return build_Gk(self.k, self.sides)

    def to_dict(self) -> dict:
        d = {
            "k": self.k,
            "measure": self.measure,
            "value": self.value,
            "sides": [[c.spec.to_dict() for c in s] for s in self.sides],
            "sideSizes": list(self.side_sizes),
            "verified": self.verified,
        }
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_dict()
        return d


def _side_measure(children: Sequence[Graph], measure: str) -> int:
    u = build_U(children)
    return len(u.blocks["active"]) if measure == "activeVertices" else u.n


def match_sizes(k: int, bound: int = DEFAULT_BOUND, measure: str = "activeVertices", catalog: BaseCatalog | None = None) -> SizeMatch:
    """Smallest base sizes (within ``bound``) making the two sides of ``G_k`` equal in ``measure``.

    For odd ``k`` the two sides differ in their number of children.  At
    ``k = 5`` the vertex counts can never agree (one side is ``2s``, the
    other ``s(c+1) + c`` with ``c`` odd), so only active-set sizes are
    matched there.
    """
    if k < 4:
        raise ValueError("k must be at least 4")
    if measure not in ("vertices", "activeVertices"):
        raise ValueError(f"unknown measure {measure!r}")
    catalog = catalog or BaseCatalog()
    cert = None
    if k == 4:
        sides = ([odd_cycle(5)], [odd_cycle(5)])
    elif k % 2 == 0:
        kids = [catalog.get(r) for r in u_orders(k, k // 2)]
        sides = (kids, list(kids))
    elif k == 5:
        if measure == "vertices":
            raise ValueError("for k=5 the sides have vertex counts of opposite parity; match activeVertices instead")
        c5 = odd_cycle(5)
        a = achievable_sizes("U", bound, measure)
        b = achievable_sizes("U", bound, measure, [c5])
        cert = hs_intersect(a, b)
        if not cert.explicit:
            raise ValueError(f"no equal sizes within bound {bound}")
        value = cert.explicit[0]
        s1 = realize_size("toft", value, "vertices")
        s2 = realize_size("toft", value // c5.n, "vertices")
        sides = ([s1], [s2, c5])
    else:
        raise ValueError("size matching is implemented for k = 4, k = 5 and even k")
    sizes = (_side_measure(sides[0], measure), _side_measure(sides[1], measure))
    if sizes[0] > bound:
        raise ValueError(f"no equal sizes within bound {bound}")
    return SizeMatch(k, measure, sizes[0], sides, sizes[0] == sizes[1], sizes, cert)


# ---------------------------------------------------------------------
# density optimisation


def optimize_ratio(core: Fraction | int | str, multiplier: Fraction | int | str) -> tuple[Fraction, Fraction]:
    """Maximise ``(c + x) / (m + x)^2`` over ``x > 0``.

    The model: one side contributes ``c s^2`` edges on ``m s`` vertices,
    and the other side's active set has ``x s`` vertices joined to ``s``
    actives.  The optimum is ``x* = m - 2c`` with value ``1 / (4 (m - c))``;
    when ``m <= 2c`` the supremum is approached as ``x -> 0`` and we return
    ``(0, c / m^2)``.
    """
    c, m = Fraction(core), Fraction(multiplier)
    if c < 0 or m <= 0:
        raise ValueError("need c >= 0 and m > 0")
    if c >= m:
        raise ValueError("degenerate model: c >= m")
    x = m - 2 * c
    if x <= 0:
        return Fraction(0), c / (m * m)
    return x, 1 / (4 * (m - c))


def grid_search_ratio(core: float, multiplier: float, step: float = 1e-6, chunk: int = 1_000_000) -> tuple[float, float]:
    """Brute-force maximiser of the same objective on the grid ``step, 2 step, ..., 2m``."""
    c, m = float(core), float(multiplier)
    total = int(round(2 * m / step))
    best_x, best = 0.0, -1.0
    for start in range(1, total + 1, chunk):
        xs = np.arange(start, min(start + chunk, total + 1), dtype=np.float64) * step
        vals = (c + xs) / (m + xs) ** 2
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, best_x = float(vals[i]), float(xs[i])
    return best_x, best


# (c, m) per family, see optimize_ratio:
#   triangle-free k=5: one side is a Toft graph (n^2/16 edges) matched to
#     its own copy as actives, so c = 1/16 on m = 2 units of vertices;
#   pentagon-free k=5: one side is the doubling of a pentagon-free 4-critical
#     graph (n^2/36 edges, tripled by doubling) plus its forward actives,
#     so c = 3/36 = 1/12 on m = 3 units.
DENSITY_MODELS = {
    ("triangle", 5): (Fraction(1, 16), Fraction(2)),
    ("pentagon", 5): (Fraction(1, 12), Fraction(3)),
}


@dataclass(frozen=True)
class DensityTableEntry:
    ell: int
    k: int
    lower: Fraction | None
    upper: Fraction | None
    status: str  # "exact" | "bound" | "open"
    source: str = ""

    def __post_init__(self):
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise ValueError(f"lower bound exceeds upper bound at ({self.ell}, {self.k})")

    def cell(self) -> str:
        if self.status == "exact":
            return str(self.lower)
        if self.status == "bound":
            return f">={self.lower}"
        return "?"

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "k": self.k,
            "lower": None if self.lower is None else str(self.lower),
            "upper": None if self.upper is None else str(self.upper),
            "status": self.status,
            "source": self.source,
        }


QUARTER = Fraction(1, 4)  # Erdős-Stone, reported as a literal


def density_table(ells: Sequence[int] = (3, 5, 7, 9), ks: Sequence[int] = (4, 5, 6, 7, 8)) -> list[DensityTableEntry]:
    """Lower bounds on the density constants, computed from the constructions."""
    out = []
    for ell in ells:
        if ell < 3 or ell % 2 == 0:
            raise ValueError("ell must be odd and at least 3")
        for k in ks:
            if k < 4:
                raise ValueError("k must be at least 4")
            if k == 4:
                # bipartite block of a 4-critical graph of odd-girth ell+2 has
                # classes of n/(ell+1) vertices each
                low = Fraction(1, (ell + 1) ** 2)
                src = "toft" if ell == 3 else ("pentagon-free pasting" if ell == 5 else f"odd-girth family q={(ell - 3) // 2}")
                out.append(DensityTableEntry(ell, k, low, QUARTER, "bound", src))
            elif ell in (3, 5) and k == 5:
                mode = "triangle" if ell == 3 else "pentagon"
                _, low = optimize_ratio(*DENSITY_MODELS[(mode, 5)])
                out.append(DensityTableEntry(ell, k, low, QUARTER, "bound", f"optimize_ratio{tuple(str(x) for x in DENSITY_MODELS[(mode, 5)])}"))
            elif ell in (3, 5):
                out.append(DensityTableEntry(ell, k, QUARTER, QUARTER, "exact", "dense pasting, active fraction -> 1"))
            else:
                out.append(DensityTableEntry(ell, k, None, QUARTER, "open", "no construction known"))
    return out


def format_density_table(entries: Sequence[DensityTableEntry]) -> str:
    ells = sorted({e.ell for e in entries})
    ks = sorted({e.k for e in entries})
    cell = {(e.ell, e.k): e.cell() for e in entries}
    width = max(7, *(len(c) for c in cell.values())) + 1
    lines = ["l\\k".ljust(4) + "".join(str(k).rjust(width) for k in ks)]
    for ell in ells:
        lines.append(str(ell).ljust(4) + "".join(cell.get((ell, k), "").rjust(width) for k in ks))
    return "\n".join(lines)
