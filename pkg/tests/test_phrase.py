import random

import pytest
from hypothesis import given, settings, strategies as st

from wcnevent.netsci import assortativity
from wcnevent.phrase import (
    Keyphrase,
    assortative_pieces,
    barank,
    break_cycles,
    density,
    element_roles,
    mls_extract,
    topo_keyphrase,
)
from wcnevent.wcn import WcnGraph


def test_keyphrase_needs_two_words():
    with pytest.raises(ValueError):
        Keyphrase(("a",), 1.0)


def test_keyphrase_roundtrip():
    p = Keyphrase(("a", "b"), 2.5, 3, "barank")
    assert Keyphrase.from_dict(p.to_dict()) == p


def test_mls_diamond():
    g = WcnGraph.from_edges([("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")])
    assert [p.words for p in mls_extract(g)] == [("a", "b", "d"), ("a", "c", "d")]


def test_mls_chain_density():
    g = WcnGraph.from_edges({("a", "b"): 2, ("b", "c"): 4})
    (p,) = mls_extract(g)
    assert p.words == ("a", "b", "c") and p.density == 3.0 and p.method == "mls"


def test_mls_cyclic_component_warns():
    g = WcnGraph.from_edges([("a", "b"), ("b", "a")])
    with pytest.warns(RuntimeWarning):
        assert mls_extract(g) == []


def test_mls_truncation_warns():
    edges = [(f"s", f"m{i}") for i in range(5)] + [(f"m{i}", "t") for i in range(5)]
    g = WcnGraph.from_edges(edges)
    with pytest.warns(RuntimeWarning):
        assert len(mls_extract(g, max_paths=3)) == 3


def test_element_roles():
    g = WcnGraph.from_edges([("a", "b"), ("b", "c")])
    assert element_roles(g) == {"a": "first", "b": "centre", "c": "last"}


def test_topo_cycle_trace():
    g = WcnGraph.from_edges({("a", "b"): 5, ("b", "c"): 4, ("c", "a"): 1})
    p = topo_keyphrase(g)
    assert p.words == ("a", "b", "c") and p.density == 4.5


def test_topo_single_edge():
    p = topo_keyphrase(WcnGraph.from_edges({("a", "b"): 7}))
    assert p.words == ("a", "b") and p.density == 7.0


def test_topo_merging_chains():
    assert topo_keyphrase(WcnGraph.from_edges([("x", "z"), ("y", "z")])).words == ("x", "y", "z")


def test_self_loops_dropped():
    g = WcnGraph.from_edges({("a", "a"): 9, ("a", "b"): 1})
    p = topo_keyphrase(g)
    assert p.words == ("a", "b") and p.density == 1.0


def test_cycle_tie_break():
    g = WcnGraph.from_edges({("a", "b"): 2, ("b", "a"): 2})
    assert break_cycles(g).edges() == [("b", "a", 2)]


def test_density_of_single_edge():
    assert density(WcnGraph.from_edges({("a", "b"): 4})) == 4.0
    assert density(WcnGraph.from_edges([], nodes=["a"])) == 0.0


def test_barank_trace():
    g = WcnGraph.from_edges({("a", "b"): 1, ("b", "c"): 5, ("c", "d"): 1})
    pieces, removed = assortative_pieces(g)
    assert removed == 2
    assert [p.nodes() for _, p in pieces] == [["b", "c"]]
    (p,) = barank(g)
    assert p.words == ("b", "c") and p.density == 5.0 and p.method == "barank"


def test_barank_single_edge():
    (p,) = barank(WcnGraph.from_edges({("a", "b"): 1}))
    assert p.words == ("a", "b")


def test_barank_orders_by_density():
    g = WcnGraph.from_edges({("a", "b"): 3, ("p", "q"): 7})
    assert [p.words for p in barank(g)] == [("p", "q"), ("a", "b")]
    assert [p.words for p in barank(g, top_n=1)] == [("p", "q")]


def test_barank_needs_edges():
    with pytest.raises(ValueError):
        barank(WcnGraph.from_edges([], nodes=["a"]))


def test_non_disassortative_component_kept_whole():
    # Triangle with a pendant pair elsewhere: neither component is disassortative.
    g = WcnGraph.from_edges({("a", "b"): 1, ("b", "c"): 1, ("c", "a"): 1, ("x", "y"): 2})
    pieces, removed = assortative_pieces(g)
    assert removed == 0
    assert sorted(p.nodes() for _, p in pieces) == [["a", "b", "c"], ["x", "y"]]


def random_digraph(seed, n_max=10):
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    edges = {}
    for _ in range(rng.randint(1, 3 * n)):
        u, v = rng.randrange(n), rng.randrange(n)
        edges[(f"n{u}", f"n{v}")] = rng.randint(1, 5)
    return WcnGraph.from_edges(edges)


@pytest.mark.filterwarnings("ignore:component has no source")
@settings(max_examples=100)
@given(st.integers(0, 100_000))
def test_mls_phrases_are_paths(seed):
    g = break_cycles(random_digraph(seed))
    for p in mls_extract(g, max_paths=10_000):
        assert all(g.has_edge(u, v) for u, v in zip(p.words, p.words[1:]))
        assert len(set(p.words)) == len(p.words)


@settings(max_examples=100)
@given(st.integers(0, 100_000))
def test_barank_pieces_terminal(seed):
    g = random_digraph(seed, 14)
    pieces, removed = assortative_pieces(g)
    assert removed <= g.number_of_edges()
    for _, piece in pieces:
        tau = assortativity(piece).tau if piece.number_of_edges() else None
        assert piece.number_of_edges() < 2 or tau is None or tau >= 0
    phrases = barank(g)
    assert [p.density for p in phrases] == sorted((p.density for p in phrases), reverse=True)
