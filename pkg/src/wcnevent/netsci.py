"""Structural analysis of word networks: distributions, power-law fits, path lengths,
small-world comparison and degree assortativity."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .wcn import WcnGraph, _component_id_sets, edge_strength

__all__ = [
    "DISTRIBUTION_KINDS",
    "Distribution",
    "PowerLawFit",
    "AssortativityReport",
    "SmallWorldReport",
    "EmptyGraphError",
    "distribution",
    "fit_power_law",
    "aspl",
    "assortativity",
    "assortativity_from_pairs",
    "degree_pairs",
    "is_disassortative",
    "small_world",
]

DISTRIBUTION_KINDS = (
    "degree",
    "in_degree",
    "out_degree",
    "strength",
    "in_strength",
    "out_strength",
    "edge_weight",
    "edge_strength",
)


class EmptyGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Distribution:
    kind: str
    histogram: dict
    probabilities: dict = field(default=None)

    def __post_init__(self):
        if self.probabilities is None:
            total = sum(self.histogram.values())
            probs = {k: c / total for k, c in self.histogram.items()} if total else {}
            object.__setattr__(self, "probabilities", probs)

    @classmethod
    def from_values(cls, kind: str, values: Iterable) -> "Distribution":
        return cls(kind, dict(sorted(Counter(values).items())))


def distribution(g: WcnGraph, kind: str) -> Distribution:
    """Exact histogram of a node or edge quantity (edge strength rounded to 3 decimals)."""
    if kind not in DISTRIBUTION_KINDS:
        raise ValueError(f"unknown distribution kind {kind!r}")
    if len(g) == 0:
        raise EmptyGraphError("distribution of an empty graph")
    if kind == "edge_weight":
        values = [w for _, _, w in g.edge_ids()]
    elif kind == "edge_strength":
        values = [round(edge_strength(g, u, v), 3) for u, v, _ in g.edges()]
    else:
        f = getattr(g, f"{kind}_id")
        values = [f(i) for i in g.node_ids()]
    return Distribution.from_values(kind, values)


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    fit_range: tuple
    r_squared: float
    method: str = "log-log least squares"

    @property
    def scale_free(self) -> bool:
        return 2.0 < self.gamma < 3.0


def fit_power_law(d: Distribution, k_min=1, k_max=None, min_count: int = 1) -> PowerLawFit:
    """Slope of ``log p(k)`` against ``log k`` over ``k_min <= k <= k_max``.

    Returns ``gamma = -slope``. Needs at least three positive support points.
    Values seen fewer than ``min_count`` times are left out: in a sampled
    heavy tail each singleton sits far above its true probability and drags
    the slope toward zero.
    """
    pts = [
        (k, p)
        for k, p in d.probabilities.items()
        if p > 0 and k > 0 and k >= k_min and (k_max is None or k <= k_max)
        and (min_count <= 1 or d.histogram.get(k, 0) >= min_count)
    ]
    if len(pts) < 3:
        raise ValueError(f"power-law fit needs >= 3 points with k >= {k_min}, got {len(pts)}")
    x = np.log([k for k, _ in pts])
    y = np.log([p for _, p in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    ks = [k for k, _ in pts]
    return PowerLawFit(float(-slope), (min(ks), max(ks)), min(max(r2, 0.0), 1.0))


def aspl(g: WcnGraph, view: str = "undirected", largest_component_only: bool = False) -> float:
    """Mean shortest-path length over ordered pairs that can reach each other."""
    if view not in ("directed", "undirected"):
        raise ValueError(f"unknown view {view!r}")
    if len(g) < 2:
        raise ValueError("path length needs at least two nodes")
    if largest_component_only:
        comps = _component_id_sets(g)
        g = g.subgraph_ids(max(comps, key=len))
    G = g.to_networkx() if view == "directed" else g.to_undirected_networkx()
    if view == "directed":
        G = nx.DiGraph(G)
    total = pairs = 0
    for _, dists in nx.all_pairs_shortest_path_length(G):
        for d in dists.values():
            if d > 0:
                total += d
                pairs += 1
    if pairs == 0:
        raise ValueError("no reachable pair of distinct nodes")
    return total / pairs


@dataclass(frozen=True)
class AssortativityReport:
    tau: float | None
    A: float
    B: float
    C: float
    M: int
    edge_endpoint_degrees: tuple

    @property
    def defined(self) -> bool:
        return self.tau is not None


def degree_pairs(g: WcnGraph) -> list[tuple[int, int]]:
    """Endpoint total degrees of each edge in the simple undirected view."""
    edges = g.undirected_edge_ids()
    deg = Counter()
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    return [(deg[a], deg[b]) for a, b in edges]


def _tau_parts(pairs: Sequence[tuple[int, int]]) -> tuple[int, int, int]:
    M = len(pairs)
    prod = sum(j * k for j, k in pairs)
    s1 = sum(j + k for j, k in pairs)
    s2 = sum(j * j + k * k for j, k in pairs)
    # Scaled by 4M so the sign and zero tests are exact in integers.
    return 4 * prod * M - s1 * s1, 2 * s2 * M - s1 * s1, s1


def assortativity_from_pairs(pairs: Sequence[tuple[int, int]]) -> AssortativityReport:
    M = len(pairs)
    if M == 0:
        raise EmptyGraphError("assortativity needs at least one edge")
    num, den, s1 = _tau_parts(pairs)
    A = float(sum(j * k for j, k in pairs))
    C = float(sum(0.5 * (j * j + k * k) for j, k in pairs))
    B = (0.5 * s1) ** 2 / M
    tau = num / den if den != 0 else None
    return AssortativityReport(tau, A, B, C, M, tuple(pairs))


def assortativity(g: WcnGraph) -> AssortativityReport:
    """Degree correlation over edges of the undirected unweighted view.

    ``tau = (A - B) / (C - B)`` with ``A = sum j k``, ``C = sum (j^2 + k^2)/2``
    and ``B = (sum (j + k)/2)^2 / M``. ``tau`` is None when ``C == B``.
    """
    return assortativity_from_pairs(degree_pairs(g))


def is_disassortative(g: WcnGraph) -> bool:
    """True iff the graph has an edge and a defined, strictly negative tau."""
    pairs = degree_pairs(g)
    if not pairs:
        return False
    num, den, _ = _tau_parts(pairs)
    # den >= 0 always (variance), so the sign of tau is the sign of num.
    return den != 0 and num < 0


@dataclass(frozen=True)
class SmallWorldReport:
    cc: float
    cc_random: float
    aspl: float
    aspl_random: float
    verdict: bool


def _largest_cc_aspl(G: nx.Graph) -> float:
    if G.number_of_nodes() < 2:
        return 0.0
    comp = min(nx.connected_components(G), key=lambda c: (-len(c), min(c)))
    H = G.subgraph(comp)
    return nx.average_shortest_path_length(H) if H.number_of_nodes() > 1 else 0.0


def small_world(g: WcnGraph, seed: int = 0, cc_ratio: float = 10.0, aspl_factor: float = 2.0) -> SmallWorldReport:
    """Compare clustering and largest-component path length against one seeded
    Erdős–Rényi graph with the same node count and edge density."""
    G = g.to_undirected_networkx()
    n, e = G.number_of_nodes(), G.number_of_edges()
    p = e / (n * (n - 1) / 2) if n > 1 else 0.0
    R = nx.gnp_random_graph(n, p, seed=seed)
    cc = nx.average_clustering(G) if n else 0.0
    cc_r = nx.average_clustering(R) if n else 0.0
    L = _largest_cc_aspl(G)
    L_r = _largest_cc_aspl(R)
    if cc == 0:
        high_cc = False
    elif cc_r == 0:
        high_cc = True
    else:
        high_cc = cc / cc_r > cc_ratio
    close_paths = L > 0 and L_r > 0 and max(L, L_r) / min(L, L_r) <= aspl_factor
    return SmallWorldReport(cc, cc_r, L, L_r, bool(high_cc and close_paths))
