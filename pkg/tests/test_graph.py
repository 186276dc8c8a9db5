import math
import random
from fractions import Fraction

import pytest
from hypothesis import given

from critgraph.graph import (
    ACTIVE,
    Graph,
    Role,
    density_stats,
    disjoint_union,
    has_odd_cycle_at_most,
    join_complete_bipartite,
    join_matching,
    odd_girth,
)

from oracles import brute_odd_girth, graphs, random_graph


def cycle(m):
    return Graph(m).add_edges((i, (i + 1) % m) for i in range(m))


def test_basic_queries():
    g = Graph(4).add_edges([(0, 1), (1, 2), (1, 2)])
    assert g.num_edges == 2
    assert g.neighbors(1) == [0, 2]
    assert g.edges() == [(0, 1), (1, 2)]
    assert g.degree(3) == 0
    g.remove_edge(2, 1)
    assert g.edges() == [(0, 1)]
    with pytest.raises(KeyError):
        g.remove_edge(2, 3)


def test_invalid_edges_rejected():
    g = Graph(3)
    with pytest.raises(ValueError):
        g.add_edge(1, 1)
    with pytest.raises(ValueError):
        g.add_edge(0, 3)
    with pytest.raises(ValueError):
        Graph(-1)


def test_roles_round_trip_through_text():
    for r in (Role("plain"), ACTIVE, Role.structural(3), Role("apex")):
        assert Role.parse(str(r)) == r
    with pytest.raises(ValueError):
        Role("nonsense")
    with pytest.raises(ValueError):
        Role("structural", 0)


def test_copy_is_independent():
    g = cycle(5)
    h = g.copy()
    h.remove_edge(0, 1)
    assert g.has_edge(0, 1) and not h.has_edge(0, 1)
    assert g.without_edge(0, 1).same_adjacency(h)


def test_induced_subgraph_keeps_order():
    g = cycle(6)
    h, ids = g.induced_subgraph([3, 2, 1])
    assert ids == [3, 2, 1]
    assert h.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize("m", [3, 5, 7, 9, 21])
def test_odd_girth_of_cycles(m):
    assert odd_girth(cycle(m)) == m


def test_odd_girth_bipartite_is_infinite():
    assert odd_girth(cycle(8)) == math.inf
    assert odd_girth(Graph(5)) == math.inf
    k33 = Graph(6)
    join_complete_bipartite(k33, [0, 1, 2], [3, 4, 5])
    assert odd_girth(k33) == math.inf


def test_odd_girth_chunking_does_not_matter():
    rng = random.Random(3)
    for _ in range(30):
        g = random_graph(rng, 20, 0.15)
        assert odd_girth(g, chunk=3) == odd_girth(g)


@given(graphs())
def test_odd_girth_matches_enumeration(g):
    assert odd_girth(g) == brute_odd_girth(g)


def test_has_odd_cycle_at_most():
    g = cycle(7)
    assert has_odd_cycle_at_most(g, 7)
    assert not has_odd_cycle_at_most(g, 5)
    with pytest.raises(ValueError):
        has_odd_cycle_at_most(g, 4)


def test_density_stats_exact():
    st_ = density_stats(cycle(5))
    assert (st_.vertices, st_.edges, st_.ratio) == (5, 5, Fraction(1, 5))
    with pytest.raises(ValueError):
        density_stats(Graph(0))


def test_disjoint_union_prefixes_blocks():
    a = cycle(3)
    a.set_block("x", [0])
    g, offs = disjoint_union([a, cycle(4)], ["L", "R"])
    assert offs == [0, 3] and g.n == 7 and g.num_edges == 7
    assert g.blocks["L/x"] == [0] and g.blocks["R"] == [3, 4, 5, 6]


def test_join_rejects_triangle():
    g = Graph(4).add_edges([(0, 2), (1, 3)])
    # 0's neighbour 2 and 1's neighbour 3 are disjoint: fine
    join_complete_bipartite(g, [0], [1])
    h = Graph(3).add_edges([(0, 2), (1, 2)])
    with pytest.raises(ValueError):
        join_complete_bipartite(h, [0], [1])
    with pytest.raises(ValueError):
        join_complete_bipartite(Graph(3).add_edge(0, 1), [0, 1], [2])


def test_join_matching_lengths():
    g = Graph(4)
    join_matching(g, [0, 1], [2, 3])
    assert g.edges() == [(0, 2), (1, 3)]
    with pytest.raises(ValueError):
        join_matching(g, [0], [2, 3])


def test_trivial_cases():
    assert Graph(0).n == 0 and Graph(0).num_edges == 0
    assert odd_girth(Graph(1)) == math.inf
    assert density_stats(Graph(4)).ratio == 0
    g, offs = disjoint_union([])
    assert g.n == 0 and offs == []
    g, _ = disjoint_union([cycle(5), cycle(5)])
    assert (g.n, g.num_edges) == (10, 10)
    h = Graph(10)
    join_complete_bipartite(h, range(5), range(5, 10))
    assert h.num_edges == 25
    join_matching(h, [], [])
    assert h.num_edges == 25
    with pytest.raises(ValueError):
        join_complete_bipartite(Graph(4), [0, 1], [1, 2])
