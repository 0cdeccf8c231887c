"""Word co-occurrence network: construction, queries and per-node/per-edge metrics.

Words are interned to integer ids in lexicographic order, so sorting ids
sorts words. Subgraphs and copies share the vocabulary of their parent.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

from .corpus import TokenStream

__all__ = [
    "WcnMode",
    "WcnGraph",
    "NodeMetrics",
    "build_wcn",
    "node_metrics",
    "edge_strength",
    "components",
    "component_subgraphs",
]


@dataclass(frozen=True)
class WcnMode:
    pairing: str = "nearest_neighbour"  # or "all_pair"
    directed: bool = True
    weighted: bool = True

    def __post_init__(self):
        if self.pairing not in ("nearest_neighbour", "all_pair"):
            raise ValueError(f"unknown pairing {self.pairing!r}")


DEFAULT_MODE = WcnMode()


class WcnGraph:
    """Directed weighted word graph backed by integer adjacency maps.

    ``succ[u][v]`` and ``pred[v][u]`` both hold the weight of edge u->v.
    In undirected mode every edge is stored once with tail id < head id
    (self-loops aside), and queries treat it symmetrically.
    """

    __slots__ = ("vocab", "index", "mode", "succ", "pred")

    def __init__(self, vocab: Sequence[str], mode: WcnMode = DEFAULT_MODE):
        self.vocab = tuple(vocab)
        self.index = {w: i for i, w in enumerate(self.vocab)}
        self.mode = mode
        self.succ: dict[int, dict[int, int]] = {}
        self.pred: dict[int, dict[int, int]] = {}

    # construction -------------------------------------------------------
    @classmethod
    def from_edges(cls, edges, nodes: Iterable[str] = (), mode: WcnMode = DEFAULT_MODE) -> "WcnGraph":
        """Build from ``{(tail, head): weight}`` or an iterable of ``(tail, head[, weight])``."""
        if isinstance(edges, Mapping):
            triples = [(u, v, w) for (u, v), w in edges.items()]
        else:
            triples = [(e[0], e[1], e[2] if len(e) > 2 else 1) for e in edges]
        nodes = list(nodes)
        vocab = sorted({*nodes, *(t[0] for t in triples), *(t[1] for t in triples)})
        g = cls(vocab, mode)
        for n in nodes:
            g._add_node(g.index[n])
        for u, v, w in triples:
            g.add_weight(u, v, w)
        return g

    @classmethod
    def from_networkx(cls, G, weight: str = "weight") -> "WcnGraph":
        mode = WcnMode(directed=G.is_directed())
        g = cls(sorted(str(n) for n in G.nodes), mode)
        for n in G.nodes:
            g._add_node(g.index[str(n)])
        for u, v, data in G.edges(data=True):
            g.add_weight(str(u), str(v), int(data.get(weight, 1)))
        return g

    def _add_node(self, i: int) -> None:
        self.succ.setdefault(i, {})
        self.pred.setdefault(i, {})

    def _key(self, u: int, v: int) -> tuple[int, int]:
        if not self.mode.directed and u > v:
            return v, u
        return u, v

    def add_weight(self, u: str, v: str, w: int = 1) -> None:
        if w < 1:
            raise ValueError("edge weights must be >= 1")
        a, b = self._key(self.index[u], self.index[v])
        self._add_node(a)
        self._add_node(b)
        if not self.mode.weighted:
            w, cur = 1, 0
        else:
            cur = self.succ[a].get(b, 0)
        self.succ[a][b] = cur + w
        self.pred[b][a] = cur + w

    def set_weight_id(self, a: int, b: int, w: int) -> None:
        """Set the weight of an existing edge by id; ``w <= 0`` removes it."""
        if w <= 0:
            self.remove_edge_id(a, b)
        else:
            self.succ[a][b] = w
            self.pred[b][a] = w

    def remove_edge_id(self, a: int, b: int) -> None:
        del self.succ[a][b]
        del self.pred[b][a]

    def remove_edge(self, u: str, v: str) -> None:
        a, b = self._key(self.index[u], self.index[v])
        if b not in self.succ.get(a, {}):
            raise KeyError(f"no edge {u!r} -> {v!r}")
        self.remove_edge_id(a, b)

    def remove_node_id(self, i: int) -> None:
        for j in list(self.succ[i]):
            del self.pred[j][i]
        for j in list(self.pred[i]):
            if j != i:
                del self.succ[j][i]
        del self.succ[i]
        del self.pred[i]

    def drop_isolated(self) -> None:
        for i in [i for i in self.succ if not self.succ[i] and not self.pred[i]]:
            del self.succ[i]
            del self.pred[i]

    def copy(self) -> "WcnGraph":
        g = WcnGraph.__new__(WcnGraph)
        g.vocab, g.index, g.mode = self.vocab, self.index, self.mode
        g.succ = {i: dict(d) for i, d in self.succ.items()}
        g.pred = {i: dict(d) for i, d in self.pred.items()}
        return g

    def subgraph_ids(self, ids: Iterable[int]) -> "WcnGraph":
        keep = set(ids)
        g = WcnGraph.__new__(WcnGraph)
        g.vocab, g.index, g.mode = self.vocab, self.index, self.mode
        g.succ = {i: {j: w for j, w in self.succ[i].items() if j in keep} for i in keep}
        g.pred = {i: {j: w for j, w in self.pred[i].items() if j in keep} for i in keep}
        return g

    def subgraph(self, words: Iterable[str]) -> "WcnGraph":
        return self.subgraph_ids(self.index[w] for w in words)

    # queries --------------------------------------------------------------
    def __contains__(self, word: str) -> bool:
        i = self.index.get(word)
        return i is not None and i in self.succ

    def __len__(self) -> int:
        return len(self.succ)

    def node_ids(self) -> list[int]:
        return sorted(self.succ)

    def nodes(self) -> list[str]:
        return [self.vocab[i] for i in sorted(self.succ)]

    def edge_ids(self) -> Iterator[tuple[int, int, int]]:
        for a in sorted(self.succ):
            nbrs = self.succ[a]
            for b in sorted(nbrs):
                yield a, b, nbrs[b]

    def edges(self) -> list[tuple[str, str, int]]:
        """All edges as ``(tail, head, weight)`` sorted by (tail, head)."""
        v = self.vocab
        return [(v[a], v[b], w) for a, b, w in self.edge_ids()]

    def number_of_nodes(self) -> int:
        return len(self.succ)

    def number_of_edges(self) -> int:
        return sum(len(d) for d in self.succ.values())

    def total_weight(self) -> int:
        return sum(sum(d.values()) for d in self.succ.values())

    def has_edge(self, u: str, v: str) -> bool:
        if u not in self or v not in self:
            return False
        a, b = self._key(self.index[u], self.index[v])
        return b in self.succ[a]

    def weight(self, u: str, v: str) -> int:
        if not self.has_edge(u, v):
            raise KeyError(f"no edge {u!r} -> {v!r}")
        a, b = self._key(self.index[u], self.index[v])
        return self.succ[a][b]

    def _node_id(self, word: str) -> int:
        if word not in self:
            raise KeyError(f"word {word!r} is not a node")
        return self.index[word]

    def in_degree_id(self, i: int) -> int:
        if not self.mode.directed:
            return self.degree_id(i)
        return len(self.pred[i])

    def out_degree_id(self, i: int) -> int:
        if not self.mode.directed:
            return self.degree_id(i)
        return len(self.succ[i])

    def degree_id(self, i: int) -> int:
        if self.mode.directed:
            return len(self.pred[i]) + len(self.succ[i])
        return len(self.pred[i]) + len(self.succ[i]) - (1 if i in self.succ[i] else 0)

    def in_strength_id(self, i: int) -> int:
        if not self.mode.directed:
            return self.strength_id(i)
        return sum(self.pred[i].values())

    def out_strength_id(self, i: int) -> int:
        if not self.mode.directed:
            return self.strength_id(i)
        return sum(self.succ[i].values())

    def strength_id(self, i: int) -> int:
        s = sum(self.pred[i].values()) + sum(self.succ[i].values())
        if not self.mode.directed:
            s -= self.succ[i].get(i, 0)
        return s

    def neighbours_id(self, i: int) -> set[int]:
        """Distinct neighbours in the undirected view, self excluded."""
        nb = set(self.succ[i]) | set(self.pred[i])
        nb.discard(i)
        return nb

    def undirected_edge_ids(self) -> list[tuple[int, int]]:
        """Simple undirected view: one (a, b) with a < b per adjacent pair, no self-loops."""
        seen = set()
        for a, nbrs in self.succ.items():
            for b in nbrs:
                if a != b:
                    seen.add((a, b) if a < b else (b, a))
        return sorted(seen)

    def to_networkx(self) -> nx.DiGraph | nx.Graph:
        G = nx.DiGraph() if self.mode.directed else nx.Graph()
        G.add_nodes_from(self.nodes())
        G.add_weighted_edges_from(self.edges())
        return G

    def to_undirected_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.nodes())
        v = self.vocab
        G.add_edges_from((v[a], v[b]) for a, b in self.undirected_edge_ids())
        return G

    def write_edgelist(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for u, v, w in self.edges():
                fh.write(f"{u}\t{v}\t{w}\n")

    def __eq__(self, other) -> bool:
        if not isinstance(other, WcnGraph):
            return NotImplemented
        return self.mode == other.mode and self.nodes() == other.nodes() and self.edges() == other.edges()

    def __repr__(self) -> str:
        return f"WcnGraph(nodes={self.number_of_nodes()}, edges={self.number_of_edges()})"


def build_wcn(docs: Iterable[TokenStream | Sequence[str]], mode: WcnMode = DEFAULT_MODE) -> WcnGraph:
    """Link co-occurring tokens of each document into one graph.

    Nearest-neighbour pairing links consecutive tokens; all-pair pairing
    links every earlier token to every later one (self pairs skipped).
    """
    streams = [tuple(d.tokens) if isinstance(d, TokenStream) else tuple(d) for d in docs]
    vocab = sorted({t for s in streams for t in s})
    g = WcnGraph(vocab, mode)
    index = g.index
    counts: Counter = Counter()
    for s in streams:
        ids = [index[t] for t in s]
        for i in ids:
            g._add_node(i)
        if mode.pairing == "nearest_neighbour":
            counts.update(zip(ids, ids[1:]))
        else:
            counts.update((a, b) for k, a in enumerate(ids) for b in ids[k + 1:] if a != b)
    succ, pred = g.succ, g.pred
    for (a, b), w in counts.items():
        a, b = g._key(a, b)
        w = w if mode.weighted else 1
        prev = succ[a].get(b, 0) if mode.weighted else 0
        succ[a][b] = prev + w
        pred[b][a] = prev + w
    return g


@dataclass(frozen=True)
class NodeMetrics:
    degree: int
    in_degree: int
    out_degree: int
    strength: int
    in_strength: int
    out_strength: int
    selectivity: float
    clustering_coefficient: float


def clustering_id(g: WcnGraph, i: int) -> float:
    nb = g.neighbours_id(i)
    k = len(nb)
    if k < 2:
        return 0.0
    links = sum(1 for a in nb for b in g.neighbours_id(a) if b in nb) // 2
    return 2.0 * links / (k * (k - 1))


def node_metrics(g: WcnGraph, w: str) -> NodeMetrics:
    i = g._node_id(w)
    k = g.degree_id(i)
    s = g.strength_id(i)
    return NodeMetrics(
        degree=k,
        in_degree=g.in_degree_id(i),
        out_degree=g.out_degree_id(i),
        strength=s,
        in_strength=g.in_strength_id(i),
        out_strength=g.out_strength_id(i),
        selectivity=s / k if k else 0.0,
        clustering_coefficient=clustering_id(g, i),
    )


def edge_strength(g: WcnGraph, u: str, v: str) -> float:
    """Normalized affinity ``2 f(u,v) / (f(u) + f(v) - f(u,v))`` with node strengths as f."""
    fuv = g.weight(u, v)
    fu = g.strength_id(g.index[u])
    fv = g.strength_id(g.index[v])
    return 2.0 * fuv / (fu + fv - fuv)


def _component_id_sets(g: WcnGraph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for start in sorted(g.succ):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in g.succ[i].keys() | g.pred[i].keys():
                if j not in seen:
                    seen.add(j)
                    comp.append(j)
                    stack.append(j)
        out.append(sorted(comp))
    return out


def components(g: WcnGraph) -> dict[str, int]:
    """Weakly connected component label per word, numbered by smallest member word."""
    return {g.vocab[i]: label for label, comp in enumerate(_component_id_sets(g)) for i in comp}


def component_subgraphs(g: WcnGraph, min_nodes: int = 1) -> list[WcnGraph]:
    """Weakly connected components as subgraphs, in label order."""
    return [g.subgraph_ids(c) for c in _component_id_sets(g) if len(c) >= min_nodes]
