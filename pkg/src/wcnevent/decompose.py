"""Edge-weight decompositions that reduce a word network to its heavy subgraphs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .wcn import WcnGraph, _component_id_sets

__all__ = [
    "HEURISTICS",
    "SubgraphSet",
    "heuristic_k",
    "heuristic_retain",
    "top_edges",
    "k_bridge",
    "threshold_decompose",
]

HEURISTICS = ("root_two", "divided_by_two", "divided_by_three", "log_method")


@dataclass
class SubgraphSet:
    subgraphs: list[WcnGraph]
    method: str
    params: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.subgraphs)

    def __iter__(self):
        return iter(self.subgraphs)


def _split(g: WcnGraph) -> list[WcnGraph]:
    return [g.subgraph_ids(c) for c in _component_id_sets(g) if len(c) >= 2]


def heuristic_k(n_edges: int, heuristic: str) -> int:
    """Number of edges kept for ``n_edges`` edges under a retention heuristic."""
    if heuristic == "root_two":
        return math.isqrt(n_edges)
    if heuristic == "divided_by_two":
        return n_edges // 2
    if heuristic == "divided_by_three":
        return n_edges // 3
    if heuristic == "log_method":
        return math.ceil(math.log(n_edges)) if n_edges > 0 else 0
    raise ValueError(f"unknown heuristic {heuristic!r}")


def top_edges(g: WcnGraph, k: int) -> WcnGraph:
    """Keep the ``k`` heaviest edges; equal weights go to the smaller (tail, head).

    Nodes left without edges are dropped.
    """
    ranked = sorted(g.edge_ids(), key=lambda e: (-e[2], e[0], e[1]))[:k]
    out = g.subgraph_ids(())
    for a, b, w in ranked:
        out._add_node(a)
        out._add_node(b)
        out.set_weight_id(a, b, w)
    return out


def heuristic_retain(g: WcnGraph, heuristic: str) -> SubgraphSet:
    n_edges = g.number_of_edges()
    if n_edges == 0:
        raise ValueError("heuristic retention needs at least one edge")
    k = heuristic_k(n_edges, heuristic)
    if k < 1:
        raise ValueError(f"{heuristic} keeps no edges out of {n_edges}")
    return SubgraphSet(_split(top_edges(g, k)), "heuristic", {"heuristic": heuristic, "k": k})


def k_bridge(g: WcnGraph, n_t: int) -> SubgraphSet:
    """Decrement every edge of each component with ``>= n_t`` nodes until all are smaller.

    Zero-weight edges and the nodes they isolate are pruned after each round.
    """
    if n_t < 2:
        raise ValueError("n_t must be >= 2")
    g = g.copy()
    g.drop_isolated()
    rounds = 0
    while True:
        big = [c for c in _component_id_sets(g) if len(c) >= n_t]
        if not big:
            break
        rounds += 1
        for comp in big:
            for a in comp:
                for b, w in list(g.succ[a].items()):
                    g.set_weight_id(a, b, w - 1)
        g.drop_isolated()
    return SubgraphSet(_split(g), "kbridge", {"n_t": n_t, "rounds": rounds})


def threshold_decompose(g: WcnGraph, p: int, max_rounds: int | None = 1) -> SubgraphSet:
    """Per component, cut at the ``p``-th largest weight ``t`` and lower survivors by ``t``.

    ``max_rounds=None`` repeats the cut until a round removes nothing. Every
    round removes at least the edge holding ``t``, so unbounded repetition
    ends with an empty graph; one round is the default.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    g = g.copy()
    g.drop_isolated()
    rounds = 0
    while max_rounds is None or rounds < max_rounds:
        removed = False
        for comp in _component_id_sets(g):
            edges = [(a, b, w) for a in comp for b, w in g.succ[a].items()]
            if not edges:
                continue
            weights = sorted((w for _, _, w in edges), reverse=True)
            t = weights[p - 1] if len(weights) >= p else weights[-1]
            for a, b, w in edges:
                if w <= t:
                    removed = True
                g.set_weight_id(a, b, w - t)
        g.drop_isolated()
        if not removed:
            break
        rounds += 1
    return SubgraphSet(_split(g), "threshold", {"p": p, "rounds": rounds, "max_rounds": max_rounds})
