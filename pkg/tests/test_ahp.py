import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wcnevent.ahp import (
    DEFAULT_PCM,
    AhpAttributes,
    InconsistentPcmError,
    build_model,
    classify_slot,
    compute_attributes,
    load_pcm,
    normalize,
    parse_pcm,
    rank,
    rank_phrases,
)
from wcnevent.phrase import Keyphrase
from wcnevent.wcn import WcnGraph


def test_default_pcm_is_exactly_reciprocal():
    A = DEFAULT_PCM
    assert np.max(np.abs(A * A.T - 1)) < 1e-12
    assert A[1, 2] == pytest.approx(1 / 3, abs=1e-15)


def test_parse_pcm_rejects_non_reciprocal():
    with pytest.raises(ValueError):
        parse_pcm([[1, 2], [2, 1]])
    with pytest.raises(ValueError):
        parse_pcm([[1, 2, 3], [0.5, 1, 1]])
    with pytest.raises(ValueError):
        parse_pcm([[2, 1], [1, 1]])
    with pytest.raises(ValueError):
        parse_pcm("1 x\n1 1")


def test_load_pcm(tmp_path):
    p = tmp_path / "pcm.txt"
    p.write_text("1 3 1 1\n0.333 1 1 1\n1 1 1 1\n1 1 1 1\n")
    A = load_pcm(p)
    assert A[1, 0] == pytest.approx(1 / 3)


def test_all_ones_pcm():
    m = build_model([AhpAttributes(1, 1, 1, 1)], np.ones((4, 4)))
    np.testing.assert_allclose(m.weights, [0.25] * 4)
    assert m.ci == pytest.approx(0, abs=1e-12)
    assert m.cr == pytest.approx(0, abs=1e-12)


def test_inconsistent_pcm_rejected():
    bad = np.array([[1, 9, 1 / 9, 9], [1 / 9, 1, 9, 1 / 9], [9, 1 / 9, 1, 9], [1 / 9, 9, 1 / 9, 1]])
    with pytest.raises(InconsistentPcmError):
        build_model([AhpAttributes(1, 1, 1, 1)], bad)


@settings(max_examples=50)
@given(st.lists(st.floats(0.1, 10), min_size=4, max_size=4))
def test_rank_one_matrices_are_consistent(v):
    v = np.array(v)
    m = build_model([AhpAttributes(1, 1, 1, 1)], np.outer(v, 1 / v))
    assert m.ci == pytest.approx(0, abs=1e-9)
    np.testing.assert_allclose(m.weights, v / v.sum(), atol=1e-12)


def test_isolated_pair_attributes():
    g = WcnGraph.from_edges({("a", "b"): 4})
    a = compute_attributes(("a", "b"), g)
    assert a.esd == 4 and a.pd == 0 and a.dc == 1.0
    # The first word has no in-strength and the last no out-strength.
    assert a.sd == 4


def test_embedded_three_word_path():
    g = WcnGraph.from_edges(
        {("a", "b"): 3, ("b", "c"): 5, ("b", "x"): 1, ("y", "b"): 2, ("p", "a"): 2, ("c", "q"): 4}
    )
    a = compute_attributes(("a", "b", "c"), g)
    assert a.esd == 4.0
    assert a.sd == abs(4.0 - (2 + 4) / 2)
    # degrees: a=2, b=4, c=2; minus the two path edges counted twice.
    assert a.pd == 4
    assert a.dc == (1 + 1) / 4


def test_attributes_need_path():
    g = WcnGraph.from_edges([("a", "b"), ("c", "b")])
    with pytest.raises(ValueError):
        compute_attributes(("a", "b", "c"), g)
    with pytest.raises(ValueError):
        compute_attributes(("a",), g)


def test_attributes_with_explicit_edges():
    g = WcnGraph.from_edges({("x", "z"): 2, ("y", "z"): 4})
    a = compute_attributes(("x", "y", "z"), g, edges=g.edges())
    assert a.esd == 3.0 and a.pd == 0 and a.dc == 1.0


def test_normalize_rules():
    M = [[2, 0, 4, 0.5], [4, 2, 2, 1.0]]
    N = normalize(M)
    np.testing.assert_allclose(N[:, 0], [0.5, 1])
    np.testing.assert_allclose(N[:, 1], [1, 0])
    np.testing.assert_allclose(N[:, 2], [1, 0.5])
    np.testing.assert_allclose(N[:, 3], [0.5, 1])


def test_normalize_negative_cost_column_shifted():
    N = normalize([[1, -2, 1, 1], [1, 0, 1, 1], [1, 2, 1, 1]])
    np.testing.assert_allclose(N[:, 1], [1, 0, 0])


def test_single_alternative_scores_one():
    p = Keyphrase(("a", "b"), 1.0)
    (r,) = rank(build_model([AhpAttributes(3, 1, 5, 0.5)]), [p])
    assert r.rank == 1 and r.score == pytest.approx(1.0)


def test_dominant_alternative_first():
    phrases = [Keyphrase(("a", "b"), 1.0), Keyphrase(("c", "d"), 1.0)]
    attrs = [AhpAttributes(2, 3, 4, 0.2), AhpAttributes(5, 1, 9, 0.8)]
    ranked = rank(build_model(attrs), phrases)
    assert ranked[0].phrase.words == ("c", "d")
    assert ranked[0].score == pytest.approx(1.0)


def test_rank_ties_lexicographic():
    phrases = [Keyphrase(("z", "y"), 1.0), Keyphrase(("a", "b"), 1.0)]
    attrs = [AhpAttributes(1, 1, 1, 1)] * 2
    assert [r.phrase.words for r in rank(build_model(attrs), phrases)] == [("a", "b"), ("z", "y")]


def test_slot_rule():
    assert classify_slot(len("the man attacked ealing has died".split())) == "headline"
    long = "richard mannington bowes who was critically injured tried stamp out fire during riots ealing has died"
    assert classify_slot(len(long.split())) == "description"
    assert classify_slot(2) == "relevant"
    assert classify_slot(8) == "headline"
    assert classify_slot(5, description_over=4) == "description"


@settings(max_examples=60)
@given(
    st.lists(
        st.tuples(st.floats(0.1, 10), st.floats(0.1, 10), st.integers(1, 60), st.floats(0.05, 1)),
        min_size=2,
        max_size=8,
    ),
    st.integers(0, 3),
    st.floats(0.1, 20),
)
def test_rank_invariant_under_column_scaling(rows, col, factor):
    phrases = [Keyphrase((f"w{i}", "x"), 1.0) for i in range(len(rows))]
    attrs = [AhpAttributes(*r) for r in rows]
    base = build_model(attrs)
    scaled_rows = [list(r) for r in rows]
    for r in scaled_rows:
        r[col] *= factor
    scaled = build_model([AhpAttributes(*r) for r in scaled_rows])
    np.testing.assert_allclose(scaled.scores(), base.scores(), rtol=1e-9, atol=1e-12)
    assert np.all(base.scores() > 0) and np.all(base.scores() <= 1 + 1e-12)


def test_rank_phrases_end_to_end():
    g = WcnGraph.from_edges({("a", "b"): 5, ("b", "c"): 5, ("x", "y"): 1})
    phrases = [Keyphrase(("x", "y"), 1.0), Keyphrase(("a", "b", "c"), 5.0)]
    ranked = rank_phrases(phrases, g)
    assert ranked[0].phrase.words == ("a", "b", "c")
    assert [r.rank for r in ranked] == [1, 2]
    assert ranked[0].to_dict()["slot"] == "relevant"
    assert rank_phrases([], g) == []
