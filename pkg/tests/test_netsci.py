import itertools
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wcnevent.netsci import (
    Distribution,
    EmptyGraphError,
    aspl,
    assortativity,
    distribution,
    fit_power_law,
    small_world,
)
from wcnevent.wcn import WcnGraph


def G(edges, **kw):
    return WcnGraph.from_edges([(str(u), str(v)) + tuple(e[2:]) for e in edges for u, v in [e[:2]]], **kw)


def test_star_degree_histogram():
    d = distribution(G([("h", "a"), ("h", "b"), ("h", "c")]), "degree")
    assert d.histogram == {1: 3, 3: 1}
    assert sum(d.probabilities.values()) == pytest.approx(1.0, abs=1e-9)


def test_path_in_degree_histogram():
    assert distribution(G([("a", "b"), ("b", "c")]), "in_degree").histogram == {0: 1, 1: 2}


def test_edge_weight_histogram():
    g = G([("a", "b", 1), ("b", "c", 1), ("c", "d", 2)])
    assert distribution(g, "edge_weight").histogram == {1: 2, 2: 1}


def test_edge_strength_histogram_rounded():
    g = G([("a", "b", 1), ("b", "c", 1)])
    assert distribution(g, "edge_strength").histogram == {1.0: 2}


def test_distribution_empty_graph():
    with pytest.raises(EmptyGraphError):
        distribution(WcnGraph([]), "degree")


def test_exact_power_law_table():
    d = Distribution("degree", {k: 1 for k in (1, 2, 4, 8)}, {k: k ** -2.0 for k in (1, 2, 4, 8)})
    fit = fit_power_law(d)
    assert fit.gamma == pytest.approx(2.0, abs=1e-6)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-9)
    assert fit.fit_range == (1, 8)


def test_uniform_distribution_gamma_zero():
    d = Distribution.from_values("degree", list(range(1, 11)) * 3)
    assert fit_power_law(d).gamma == pytest.approx(0.0, abs=1e-6)


def test_fit_needs_three_points():
    with pytest.raises(ValueError):
        fit_power_law(Distribution.from_values("degree", [1, 2, 2]))


def test_k_min_restricts_range():
    d = Distribution.from_values("degree", [1, 1, 1, 2, 3, 4, 5])
    assert fit_power_law(d, k_min=2).fit_range == (2, 5)


def test_aspl_examples():
    path = G([("a", "b"), ("b", "c")])
    assert aspl(path, "undirected") == pytest.approx(4 / 3)
    assert aspl(path, "directed") == pytest.approx(4 / 3)
    k4 = G(itertools.combinations("abcd", 2))
    assert aspl(k4, "undirected") == 1.0


def test_aspl_largest_component():
    g = G([("a", "b"), ("b", "c"), ("x", "y")])
    assert aspl(g, "undirected", largest_component_only=True) == pytest.approx(4 / 3)
    # Ordered reachable pairs: 6 in the path (total 8) and 2 in the pair (total 2).
    assert aspl(g, "undirected") == pytest.approx(10 / 8)


def test_aspl_errors():
    with pytest.raises(ValueError):
        aspl(G([], nodes=["a"]))
    with pytest.raises(ValueError):
        aspl(G([], nodes=["a", "b"]))


@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_aspl_complete_graph(n):
    assert aspl(G(itertools.combinations(range(n), 2))) == 1.0


def test_assortativity_components_reported():
    rep = assortativity(G([(0, 1), (0, 2), (0, 3)]))
    assert rep.M == 3
    assert rep.A == 9.0
    assert rep.C == 15.0
    assert rep.B == 12.0  # (sum of (j + k) / 2)^2 / M = 6^2 / 3
    assert rep.tau == pytest.approx((rep.A - rep.B) / (rep.C - rep.B))


def test_assortativity_no_edges():
    with pytest.raises(EmptyGraphError):
        assortativity(G([], nodes=["a"]))


def test_assortativity_ignores_direction_and_weight():
    a = assortativity(G([("a", "b", 3), ("b", "c", 1), ("c", "d", 7)])).tau
    b = assortativity(G([("b", "a"), ("c", "b"), ("d", "c"), ("c", "d")])).tau
    assert a == b == pytest.approx(-0.5)


def test_assortativity_matches_networkx_on_random_graphs():
    for seed in range(50):
        H = nx.gnm_random_graph(12, 20, seed=seed)
        rep = assortativity(G(H.edges()))
        if rep.tau is not None:
            assert rep.tau == pytest.approx(nx.degree_assortativity_coefficient(H), abs=1e-9)


@settings(max_examples=60)
@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), min_size=1, max_size=20), st.randoms())
def test_tau_invariant_under_relabel_and_reversal(edges, rnd):
    edges = [(u, v) for u, v in edges if u != v]
    if not edges:
        return
    perm = list(range(8))
    rnd.shuffle(perm)
    base = assortativity(G(edges)).tau
    relabeled = assortativity(G([(perm[u], perm[v]) for u, v in edges])).tau
    reversed_ = assortativity(G([(v, u) for u, v in edges])).tau
    for other in (relabeled, reversed_):
        if base is None:
            assert other is None
        else:
            assert other == pytest.approx(base, abs=1e-12)


def test_joining_star_leaves_raises_tau():
    star = [("h", "a"), ("h", "b"), ("h", "c"), ("h", "d")]
    before = assortativity(G(star)).tau
    after = assortativity(G(star + [("a", "b")])).tau
    assert after > before


def test_small_world_on_random_graph_is_false():
    H = nx.gnp_random_graph(150, 0.05, seed=3)
    rep = small_world(WcnGraph.from_networkx(H), seed=3)
    assert not rep.verdict
    assert rep.cc / rep.cc_random < 10


def test_small_world_on_rewired_lattice_is_true():
    H = nx.connected_watts_strogatz_graph(200, 6, 0.1, seed=7)
    rep = small_world(WcnGraph.from_networkx(H), seed=7)
    assert rep.verdict
    assert rep.cc > 10 * rep.cc_random


def test_small_world_without_triangles_is_false():
    rep = small_world(G([(i, i + 1) for i in range(30)]), seed=1)
    assert rep.cc == 0 and not rep.verdict


def test_small_world_seeded():
    H = nx.connected_watts_strogatz_graph(60, 4, 0.2, seed=1)
    g = WcnGraph.from_networkx(H)
    assert small_world(g, seed=5) == small_world(g, seed=5)
