import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from critgraph.constructions import odd_cycle
from critgraph.sizing import (
    DENSITY_MODELS,
    HomogeneousSet,
    achievable_sizes,
    density_table,
    format_density_table,
    grid_search_ratio,
    hs_intersect,
    hs_product,
    hs_sum,
    match_sizes,
    optimize_ratio,
    realize_size,
)

certs = st.builds(
    HomogeneousSet.multiples,
    st.integers(1, 12),
    st.just(600),
    st.integers(0, 40),
)


@given(certs, certs)
def test_closures_are_sound_and_claimed(a, b):
    for h in (hs_sum(a, b), hs_product(a, b), hs_intersect(a, b)):
        assert h.is_sound()
        for x in h.certified():
            assert x in h


@given(certs, certs)
def test_sum_claim_beyond_bound(a, b):
    s = hs_sum(a, b)
    # the closure's claim for large N: N = (N - y0) + y0 with both parts members
    d = s.modulus
    for n in range(s.threshold + 1, s.threshold + 5 * d):
        if n % d:
            continue
        y0 = d * (b.threshold // d + 1)
        x = n - y0
        assert x > a.threshold and x % a.modulus == 0 and y0 % b.modulus == 0


def test_homogeneous_set_validation():
    with pytest.raises(ValueError):
        HomogeneousSet(0, 0, (), 10)
    with pytest.raises(ValueError):
        HomogeneousSet(2, 0, (12,), 10)
    h = HomogeneousSet.multiples(3, 30, 5)
    assert h.smallest() == 6 and 33 in h and 34 not in h and 3 not in h
    assert h.to_dict()["modulus"] == 3


def test_toft_and_u_sizes():
    t = achievable_sizes("toft", 200)
    assert t.explicit[:3] == (20, 24, 28) and t.is_sound() and t.modulus == 4
    u = achievable_sizes("U", 2000, measure="activeVertices", fixed=[odd_cycle(5)])
    assert u.explicit[:2] == (100, 120) and u.is_sound()
    for value in (20, 28, 44):
        assert realize_size("toft", value).n == value
    g = realize_size("U", 120, "activeVertices", [odd_cycle(5)])
    assert len(g.blocks["active"]) == 120
    with pytest.raises(ValueError):
        realize_size("toft", 22)
    with pytest.raises(ValueError):
        achievable_sizes("U", 2000, measure="vertices", fixed=[odd_cycle(5)])


def test_match_sizes():
    m = match_sizes(5)
    assert m.verified and m.value == 100 and m.side_sizes == (100, 100)
    assert m.build().n == 325
    assert m.to_dict()["certificate"]["modulus"] == 20
    for k in (4, 6):
        assert match_sizes(k).verified
    with pytest.raises(ValueError):
        match_sizes(5, measure="vertices")
    with pytest.raises(ValueError):
        match_sizes(7)


def test_optimize_ratio_known_values():
    assert optimize_ratio(*DENSITY_MODELS[("triangle", 5)]) == (Fraction(15, 8), Fraction(4, 31))
    assert optimize_ratio(*DENSITY_MODELS[("pentagon", 5)]) == (Fraction(17, 6), Fraction(3, 35))
    with pytest.raises(ValueError):
        optimize_ratio(2, 1)
    x, v = optimize_ratio(Fraction(3, 4), 1)
    assert x == 0 and v == Fraction(3, 4)


def test_optimize_ratio_against_scipy_oracle():
    rng = random.Random(11)
    for _ in range(100):
        m = Fraction(rng.randint(1, 40), rng.randint(1, 10))
        c = m * Fraction(rng.randint(0, 99), 100)
        x, best = optimize_ratio(c, m)
        cf, mf = float(c), float(m)
        res = minimize_scalar(lambda t: -(cf + t) / (mf + t) ** 2, bounds=(0.0, 4 * mf), method="bounded", options={"xatol": 1e-10})
        assert abs(-res.fun - float(best)) <= 1e-9 * max(1.0, float(best))
        if x > 0:
            assert abs(res.x - float(x)) < 1e-4
        xs = np.linspace(1e-9, 4 * mf, 20001)
        assert ((cf + xs) / (mf + xs) ** 2).max() <= float(best) + 1e-12


def test_grid_search_agrees():
    x, v = grid_search_ratio(1 / 16, 2.0, step=1e-5)
    assert abs(x - 15 / 8) < 1e-4 and abs(v - 4 / 31) < 1e-9


def test_density_table_cells():
    entries = density_table()
    cells = {(e.ell, e.k): e.cell() for e in entries}
    assert cells[(3, 4)] == ">=1/16" and cells[(5, 5)] == ">=3/35" and cells[(9, 8)] == "?"
    text = format_density_table(entries)
    assert text.splitlines()[0].split()[1:] == ["4", "5", "6", "7", "8"]
    with pytest.raises(ValueError):
        density_table(ells=(4,))
    assert entries[0].to_dict()["lower"] == "1/16"


def test_closure_examples():
    two, three = HomogeneousSet.multiples(2, 200), HomogeneousSet.multiples(3, 200)
    s = hs_sum(two, three)
    brute = {x + y for x in range(2, 201, 2) for y in range(3, 201, 3)}
    assert all(n in brute for n in s.certified()) and s.modulus == 6
    assert hs_product(two, HomogeneousSet.multiples(1, 200)).modulus == 2
    assert hs_sum(HomogeneousSet.multiples(1, 200), HomogeneousSet.multiples(1, 200)).modulus == 1
    assert hs_intersect(HomogeneousSet.multiples(4, 200), HomogeneousSet.multiples(6, 200)).modulus == 12
    assert hs_intersect(two, two) == two
    toft_sizes = achievable_sizes("toft", 2000)
    u43 = achievable_sizes("U", 2000, measure="activeVertices", fixed=[odd_cycle(5)])
    assert hs_intersect(toft_sizes, u43).explicit


def test_degenerate_ratio_model():
    x, best = optimize_ratio(0, 2)
    assert (x, best) == (2, Fraction(1, 8))
    gx, gv = grid_search_ratio(0.0, 2.0, step=1e-4)
    assert abs(gx - 2) < 1e-3 and abs(gv - 0.125) < 1e-9
