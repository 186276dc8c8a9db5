import random

import networkx as nx
import pytest
from hypothesis import given, settings

from critgraph.colorer import (
    Budget,
    ColorConstraint,
    ColoringWitness,
    chromatic_number,
    decide_colorable,
    greedy_dsatur,
    is_k_critical,
    min_colors_on_subset,
    verify_witness,
)
from critgraph.constructions import grotzsch, mycielski, odd_cycle, toft
from critgraph.graph import Graph

from oracles import brute_chromatic, graphs, random_graph


def complete(n):
    return Graph(n).add_edges((u, v) for u in range(n) for v in range(u + 1, n))


@given(graphs(max_n=9))
@settings(max_examples=200)
def test_chromatic_matches_subset_dp(g):
    if g.n == 0:
        return
    res = chromatic_number(g)
    assert res.exact and res.value == brute_chromatic(g)
    assert verify_witness(g, res.witness)


def test_chromatic_on_small_atlas():
    for h in nx.graph_atlas_g()[1:300]:
        g = Graph(h.number_of_nodes()).add_edges(h.edges())
        assert chromatic_number(g).value == brute_chromatic(g)


@pytest.mark.parametrize("g, chi", [(complete(5), 5), (odd_cycle(9), 3), (grotzsch(), 4), (mycielski(grotzsch()), 5), (Graph(3), 1)])
def test_known_chromatic_numbers(g, chi):
    assert chromatic_number(g).value == chi


@pytest.mark.parametrize("heuristic", ["dsatur", "vsids"])
def test_decisions_both_heuristics(heuristic):
    g = toft(5)
    assert decide_colorable(g, 3, heuristic=heuristic).no
    d = decide_colorable(g, 4, heuristic=heuristic)
    assert d.yes and verify_witness(g, d.witness)


def test_constraints_are_respected():
    g = odd_cycle(5)
    c = ColorConstraint(3).restrict([0, 1, 2, 3], [1, 2])
    d = decide_colorable(g, c)
    assert d.yes and d.witness.assignment[4] == 3
    assert verify_witness(g, d.witness, c)
    assert decide_colorable(g, ColorConstraint(3).restrict(range(5), [1, 2])).no
    assert decide_colorable(g, ColorConstraint(3).force(0, 2).force(1, 2)).no


def test_constraint_validation():
    with pytest.raises(ValueError):
        ColorConstraint(0)
    with pytest.raises(ValueError):
        ColorConstraint(3).restrict([0], [4])
    with pytest.raises(ValueError):
        ColorConstraint(3).force(0, 0)
    with pytest.raises(ValueError):
        decide_colorable(odd_cycle(5), ColorConstraint(3).force(9, 1))


def test_verify_witness_rejects_bad_colorings():
    g = odd_cycle(5)
    assert not verify_witness(g, ColoringWitness([1, 2, 1, 2, 1], 3))
    assert not verify_witness(g, ColoringWitness([1, 2, 1, 2, 4], 3))
    assert not verify_witness(g, ColoringWitness([1, 2, 1], 3))
    assert verify_witness(g, ColoringWitness([1, 2, 1, 2, 3], 3))
    assert not verify_witness(g, ColoringWitness([1, 2, 1, 2, 3], 3), ColorConstraint(3).force(4, 2))


def test_witness_dict_shape():
    w = ColoringWitness([1, 2], 2, clause="c", profile={"k": 2})
    assert w.to_dict() == {"k": 2, "assignment": [1, 2], "clause": "c", "constraintProfile": {"k": 2}}


def test_greedy_is_proper():
    rng = random.Random(1)
    for _ in range(50):
        g = random_graph(rng, 25, 0.3)
        col = greedy_dsatur(g)
        assert verify_witness(g, ColoringWitness(col, max(col, default=1)))


def test_unknown_is_reported_not_no():
    g = mycielski(mycielski(grotzsch()))  # chromatic number 6
    d = decide_colorable(g, 5, Budget(max_nodes=5, max_seconds=None))
    assert d.unknown and d.witness is None
    res = chromatic_number(g, Budget(max_nodes=5, max_seconds=None))
    assert not res.exact and res.lower <= 6 <= res.upper


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("CRITGRAPH_BUDGET", "500:2.5")
    assert Budget.from_env() == Budget(500, 2.5)
    monkeypatch.setenv("CRITGRAPH_BUDGET", "1e6")
    assert Budget.from_env() == Budget(10**6, 60.0)
    monkeypatch.delenv("CRITGRAPH_BUDGET")
    assert Budget.from_env() == Budget()


def test_min_colors_on_subset():
    g = odd_cycle(7)
    r = min_colors_on_subset(g, 3, range(7))
    assert r.exact and r.value == 3
    r = min_colors_on_subset(g, 3, [0, 2, 4])
    assert r.value == 1
    r = min_colors_on_subset(g, 3, [0, 1])
    assert r.value == 2
    with pytest.raises(ValueError):
        min_colors_on_subset(g, 2, [0])


@pytest.mark.parametrize("g, k", [(odd_cycle(7), 3), (grotzsch(), 4), (toft(7), 4), (complete(4), 4)])
def test_critical_graphs(g, k):
    rep = is_k_critical(g, k)
    assert rep.verdict == "k-critical" and rep.critical
    assert len(rep.per_edge) == g.num_edges


def test_non_critical_graph_has_witness_edge():
    g = grotzsch()
    extra = g.add_vertex()
    g.add_edge(extra, 0)
    rep = is_k_critical(g, 4)
    assert rep.verdict == "not-critical" and rep.witness_edge == (0, extra)
    assert is_k_critical(odd_cycle(5), 4).verdict == "not-critical"


def test_sampled_mode_is_seeded():
    g = toft(9)
    with pytest.raises(ValueError):
        is_k_critical(g, 4, "sampled", samples=5)
    a = is_k_critical(g, 4, "sampled", samples=10, seed=7).to_dict()
    b = is_k_critical(g, 4, "sampled", samples=10, seed=7).to_dict()
    assert a == b and a["verdict"] == "sampled-pass" and a["checkedEdges"] == 10


def test_parallel_jobs_match_serial():
    g = toft(7)
    serial = is_k_critical(g, 4).to_dict()
    parallel = is_k_critical(g, 4, jobs=2).to_dict()
    assert serial == parallel


def test_toft_plus_chord_is_not_critical():
    g = toft(5)
    a = g.blocks["C1/active"]
    g.add_edge(a[0], a[1])
    rep = is_k_critical(g, 4)
    assert rep.verdict == "not-critical" and rep.witness_edge is not None


def test_critical_graph_spot_checks():
    g = toft(5)
    rng = random.Random(2)
    edges = g.edges()
    for _ in range(20):
        e, f = rng.sample(edges, 2)
        assert decide_colorable(g.without_edge(*e).without_edge(*f), 3).yes
    w = chromatic_number(g).witness
    same = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v) and w.assignment[u] == w.assignment[v]]
    for u, v in rng.sample(same, 10):
        h = g.copy().add_edge(u, v)
        assert chromatic_number(h).value >= 4


def test_small_decisions():
    assert decide_colorable(odd_cycle(5), 2).no
    assert decide_colorable(grotzsch(), 3).no and decide_colorable(grotzsch(), 4).yes
    assert min_colors_on_subset(grotzsch(), 4, [3]).value == 1
