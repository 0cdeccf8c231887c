"""Baseline keyword scores and random-walk rankers over a word network."""

from __future__ import annotations

import math
import warnings
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx
import numpy as np

from .corpus import TokenStream
from .wcn import WcnGraph, clustering_id

__all__ = [
    "METRICS",
    "ScoreTable",
    "CorpusStats",
    "RandomWalkParams",
    "ConvergenceWarning",
    "score",
    "textrank",
    "nerank",
    "topicrank",
    "hits",
    "top_keywords",
]

METRICS = (
    "degree",
    "strength",
    "selectivity",
    "betweenness",
    "closeness",
    "eigenvector",
    "eccentricity",
    "clustering_coefficient",
    "tf_idf",
    "hits_max",
    "hits_avg",
    "textrank",
    "nerank",
    "topicrank",
)


class ConvergenceWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class ScoreTable:
    metric: str
    scores: dict[str, float]
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CorpusStats:
    doc_count: int
    doc_frequency: dict[str, int]
    term_frequency: dict[str, int]
    total_tokens: int
    positions: dict[str, list[int]] = field(default_factory=dict)

    @classmethod
    def from_streams(cls, docs: Sequence[TokenStream | Sequence[str]]) -> "CorpusStats":
        tf: Counter = Counter()
        df: Counter = Counter()
        pos: defaultdict = defaultdict(list)
        offset = 0
        for d in docs:
            toks = d.tokens if isinstance(d, TokenStream) else tuple(d)
            tf.update(toks)
            df.update(set(toks))
            for k, t in enumerate(toks):
                pos[t].append(offset + k)
            offset += len(toks)
        return cls(len(docs), dict(df), dict(tf), offset, dict(pos))


@dataclass(frozen=True)
class RandomWalkParams:
    damping: float = 0.85
    convergence_epsilon: float = 1e-4
    max_iterations: int = 1000

    def __post_init__(self):
        if not 0 < self.damping < 1:
            raise ValueError("damping must lie in (0, 1)")
        if self.convergence_epsilon <= 0:
            raise ValueError("convergence_epsilon must be positive")


def _iterate(step, x0: np.ndarray, params: RandomWalkParams, name: str) -> np.ndarray:
    x = x0
    for _ in range(params.max_iterations):
        nxt = step(x)
        if np.max(np.abs(nxt - x)) < params.convergence_epsilon:
            return nxt
        x = nxt
    warnings.warn(f"{name} did not converge in {params.max_iterations} iterations", ConvergenceWarning, stacklevel=3)
    return x


def _walk(W: np.ndarray, node_weight: np.ndarray | None, params: RandomWalkParams, name: str) -> np.ndarray:
    """Damped walk ``S = nw * ((1-d) + d P^T S)`` on row-normalized transitions ``P``.

    Rows without out-weight spread their score evenly over every other node.
    """
    n = W.shape[0]
    out = W.sum(axis=1)
    P = np.zeros_like(W, dtype=float)
    has_out = out > 0
    P[has_out] = W[has_out] / out[has_out, None]
    if n > 1:
        dangling = np.flatnonzero(~has_out)
        P[dangling] = 1.0 / (n - 1)
        P[dangling, dangling] = 0.0
    nw = np.ones(n) if node_weight is None else node_weight
    d = params.damping
    return _iterate(lambda s: nw * ((1 - d) + d * (P.T @ s)), np.ones(n), params, name)


def _adjacency(g: WcnGraph, weighted: bool) -> tuple[list[int], np.ndarray]:
    ids = g.node_ids()
    pos = {i: k for k, i in enumerate(ids)}
    W = np.zeros((len(ids), len(ids)))
    for a, b, w in g.edge_ids():
        W[pos[a], pos[b]] = w if weighted else 1.0
        if not g.mode.directed:
            W[pos[b], pos[a]] = w if weighted else 1.0
    return ids, W


def textrank(g: WcnGraph, params: RandomWalkParams = RandomWalkParams()) -> dict[str, float]:
    """Unweighted damped walk with base score ``1 - d``."""
    ids, W = _adjacency(g, weighted=False)
    s = _walk(W, None, params, "textrank")
    return {g.vocab[i]: float(v) for i, v in zip(ids, s)}


def nerank(
    g: WcnGraph, stats: CorpusStats, params: RandomWalkParams = RandomWalkParams()
) -> dict[str, float]:
    """Weighted walk with each node's score scaled by its tf * log2(N / df)."""
    ids, W = _adjacency(g, weighted=True)
    words = [g.vocab[i] for i in ids]
    total = max(stats.total_tokens, 1)
    nw = np.array(
        [
            stats.term_frequency.get(w, 0) / total * math.log2(stats.doc_count / stats.doc_frequency[w])
            if stats.doc_frequency.get(w)
            else 0.0
            for w in words
        ]
    )
    s = _walk(W, nw, params, "nerank")
    return dict(zip(words, map(float, s)))


def topicrank(
    g: WcnGraph, stats: CorpusStats, params: RandomWalkParams = RandomWalkParams()
) -> dict[str, float]:
    """Single-word topics on a complete graph weighted by reciprocal offset distances.

    ``w_ij`` sums ``1 / |p_i - p_j|`` over every pair of corpus positions of
    the two words. Cost grows with the square of the corpus length.
    """
    words = g.nodes()
    pos = [np.asarray(stats.positions.get(w, ()), dtype=float) for w in words]
    n = len(words)
    W = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if len(pos[i]) and len(pos[j]):
                w = float(np.sum(1.0 / np.abs(pos[i][:, None] - pos[j][None, :])))
                W[i, j] = W[j, i] = w
    s = _walk(W, None, params, "topicrank")
    return dict(zip(words, map(float, s)))


def hits(g: WcnGraph, params: RandomWalkParams = RandomWalkParams(), mode: str = "recursive"):
    """Hub and authority scores, L2-normalized mutual reinforcement.

    ``mode="degree"`` uses in-degree as hub and out-degree as authority
    without iterating.
    """
    ids = g.node_ids()
    if mode == "degree":
        hub = {g.vocab[i]: float(g.in_degree_id(i)) for i in ids}
        auth = {g.vocab[i]: float(g.out_degree_id(i)) for i in ids}
        return hub, auth
    if mode != "recursive":
        raise ValueError(f"unknown hits mode {mode!r}")
    _, A = _adjacency(g, weighted=False)
    n = len(ids)
    h = np.ones(n) / math.sqrt(n)
    a = h.copy()
    for _ in range(params.max_iterations):
        a_new = A.T @ h
        na = np.linalg.norm(a_new)
        a_new = a_new / na if na > 0 else a_new
        h_new = A @ a_new
        nh = np.linalg.norm(h_new)
        h_new = h_new / nh if nh > 0 else h_new
        delta = max(np.max(np.abs(a_new - a)), np.max(np.abs(h_new - h)))
        a, h = a_new, h_new
        if delta < params.convergence_epsilon:
            break
    else:
        warnings.warn("hits did not converge", ConvergenceWarning, stacklevel=2)
    words = [g.vocab[i] for i in ids]
    return dict(zip(words, map(float, h))), dict(zip(words, map(float, a)))


def _eccentricity(g: WcnGraph) -> dict[str, float]:
    G = g.to_undirected_networkx()
    out = {}
    for comp in nx.connected_components(G):
        H = G.subgraph(comp)
        if len(comp) == 1:
            out.update({w: 0.0 for w in comp})
        else:
            out.update({w: 1.0 / e for w, e in nx.eccentricity(H).items()})
    return out


def score(
    g: WcnGraph,
    metric: str,
    stats: CorpusStats | None = None,
    params: RandomWalkParams = RandomWalkParams(),
    hits_mode: str = "recursive",
    log_base: float = math.e,
) -> ScoreTable:
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    if len(g) == 0:
        raise ValueError("cannot score an empty graph")
    if metric in ("tf_idf", "nerank", "topicrank") and stats is None:
        raise ValueError(f"{metric} needs corpus statistics")
    ids = g.node_ids()
    v = g.vocab
    meta: dict = {}
    if metric == "degree":
        s = {v[i]: float(g.degree_id(i)) for i in ids}
    elif metric == "strength":
        s = {v[i]: float(g.strength_id(i)) for i in ids}
    elif metric == "selectivity":
        s = {v[i]: g.strength_id(i) / g.degree_id(i) if g.degree_id(i) else 0.0 for i in ids}
    elif metric == "clustering_coefficient":
        s = {v[i]: clustering_id(g, i) for i in ids}
    elif metric == "betweenness":
        s = dict(nx.betweenness_centrality(g.to_undirected_networkx()))
    elif metric == "closeness":
        s = dict(nx.closeness_centrality(g.to_undirected_networkx()))
    elif metric == "eigenvector":
        s = _degree_redistribution(g, params)
    elif metric == "eccentricity":
        s = _eccentricity(g)
    elif metric == "tf_idf":
        total = max(stats.total_tokens, 1)
        s = {}
        for i in ids:
            w = v[i]
            df = stats.doc_frequency.get(w, 0)
            idf = math.log(stats.doc_count / df, log_base) if df else 0.0
            s[w] = stats.term_frequency.get(w, 0) / total * idf
        meta["log_base"] = log_base
    elif metric in ("hits_max", "hits_avg"):
        hub, auth = hits(g, params, hits_mode)
        combine = max if metric == "hits_max" else (lambda x, y: (x + y) / 2)
        s = {w: float(combine(hub[w], auth[w])) for w in hub}
        meta["hits_mode"] = hits_mode
    elif metric == "textrank":
        s = textrank(g, params)
    elif metric == "nerank":
        s = nerank(g, stats, params)
    else:
        s = topicrank(g, stats, params)
        meta["candidates"] = "single words; distances over concatenated token offsets"
    return ScoreTable(metric, {k: float(s[k]) for k in sorted(s)}, meta)


def _degree_redistribution(g: WcnGraph, params: RandomWalkParams) -> dict[str, float]:
    """Repeatedly pass each node's score to its neighbours split by its degree,
    starting from degree centrality on the undirected view."""
    ids = g.node_ids()
    n = len(ids)
    pos = {i: k for k, i in enumerate(ids)}
    A = np.zeros((n, n))
    for a, b in g.undirected_edge_ids():
        A[pos[a], pos[b]] = A[pos[b], pos[a]] = 1.0
    deg = A.sum(axis=1)
    p0 = deg / (n - 1) if n > 1 else np.zeros(n)
    inv = np.divide(1.0, deg, out=np.zeros(n), where=deg > 0)
    p = _iterate(lambda p: A @ (p * inv), p0, params, "eigenvector")
    return {g.vocab[i]: float(x) for i, x in zip(ids, p)}


def top_keywords(t: ScoreTable, n: int, direction: str = "top") -> list[str]:
    """``n`` words by score, ties broken by the word itself."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if direction == "top":
        key = lambda kv: (-kv[1], kv[0])
    elif direction == "bottom":
        key = lambda kv: (kv[1], kv[0])
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return [w for w, _ in sorted(t.scores.items(), key=key)[:n]]
