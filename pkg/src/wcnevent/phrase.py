"""Keyphrases from decomposed subgraphs: path enumeration, cycle-safe topological
ordering, and decomposition that stops once a piece is no longer disassortative."""

from __future__ import annotations

import heapq
import warnings
from dataclasses import dataclass

from .netsci import is_disassortative
from .wcn import WcnGraph, _component_id_sets

__all__ = [
    "Keyphrase",
    "density",
    "element_roles",
    "mls_extract",
    "break_cycles",
    "topo_order",
    "topo_keyphrase",
    "assortative_pieces",
    "barank",
    "sort_phrases",
]


@dataclass(frozen=True)
class Keyphrase:
    words: tuple[str, ...]
    density: float
    source_component: int = 0
    method: str = "topo"

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        if len(self.words) < 2:
            raise ValueError("a keyphrase has at least two words")

    @property
    def text(self) -> str:
        return " ".join(self.words)

    def to_dict(self) -> dict:
        return {
            "words": list(self.words),
            "density": self.density,
            "method": self.method,
            "component": self.source_component,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Keyphrase":
        return cls(tuple(d["words"]), float(d.get("density", 0.0)), int(d.get("component", 0)), d.get("method", "topo"))


def density(g: WcnGraph) -> float:
    """Sum of edge weights over edge count (0 for an edgeless graph)."""
    m = g.number_of_edges()
    return g.total_weight() / m if m else 0.0


def sort_phrases(phrases):
    """Density descending, then word sequence ascending."""
    return sorted(phrases, key=lambda p: (-p.density, p.words))


def element_roles(s: WcnGraph) -> dict[str, str]:
    """``first`` for nodes without in-edges, ``last`` for nodes without out-edges."""
    roles = {}
    for i in s.node_ids():
        if not s.pred[i]:
            roles[s.vocab[i]] = "first"
        elif not s.succ[i]:
            roles[s.vocab[i]] = "last"
        else:
            roles[s.vocab[i]] = "centre"
    return roles


def mls_extract(s: WcnGraph, max_paths: int = 1000, source_component: int = 0) -> list[Keyphrase]:
    """Every simple directed path from an in-degree-0 node to an out-degree-0 node."""
    sources = [i for i in s.node_ids() if not s.pred[i] and s.succ[i]]
    sinks = {i for i in s.node_ids() if not s.succ[i]}
    if not sources or not sinks:
        warnings.warn("component has no source or no sink; no path phrases", RuntimeWarning, stacklevel=2)
        return []
    out: list[Keyphrase] = []
    v = s.vocab
    for src in sources:
        # Explicit stack of (node, iterator over sorted successors).
        path = [src]
        on_path = {src}
        weight_sum = 0
        stack = [iter(sorted(s.succ[src]))]
        weights = []
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                if weights:
                    weight_sum -= weights.pop()
                continue
            if nxt in on_path:
                continue
            w = s.succ[path[-1]][nxt]
            if nxt in sinks:
                out.append(Keyphrase(tuple(v[i] for i in path) + (v[nxt],), (weight_sum + w) / len(path), source_component, "mls"))
                if len(out) >= max_paths:
                    warnings.warn(f"path enumeration truncated at {max_paths} phrases", RuntimeWarning, stacklevel=2)
                    return out
                continue
            path.append(nxt)
            on_path.add(nxt)
            weights.append(w)
            weight_sum += w
            stack.append(iter(sorted(s.succ[nxt])))
    return out


def _find_cycle(g: WcnGraph) -> list[tuple[int, int]] | None:
    """Edges of one directed cycle found by depth-first search, or None."""
    state: dict[int, int] = {}  # 1 = on stack, 2 = done
    for root in g.node_ids():
        if root in state:
            continue
        path = [root]
        state[root] = 1
        stack = [iter(sorted(g.succ[root]))]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                state[path.pop()] = 2
                continue
            st = state.get(nxt)
            if st == 1:
                cyc = path[path.index(nxt):] + [nxt]
                return list(zip(cyc, cyc[1:]))
            if st is None:
                state[nxt] = 1
                path.append(nxt)
                stack.append(iter(sorted(g.succ[nxt])))
    return None


def break_cycles(s: WcnGraph) -> WcnGraph:
    """Acyclic copy: self-loops dropped, then each found cycle loses its lightest edge.

    Ties between equally light edges go to the smaller (tail, head).
    """
    g = s.copy()
    for i in g.node_ids():
        if i in g.succ[i]:
            g.remove_edge_id(i, i)
    while (cyc := _find_cycle(g)) is not None:
        a, b = min(cyc, key=lambda e: (g.succ[e[0]][e[1]], e[0], e[1]))
        g.remove_edge_id(a, b)
    return g


def topo_order(dag: WcnGraph) -> list[str]:
    """Kahn's algorithm, releasing ready nodes in lexicographic order."""
    indeg = {i: len(dag.pred[i]) for i in dag.node_ids()}
    ready = [i for i, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for j in dag.succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, j)
    if len(order) != len(indeg):
        raise ValueError("graph has a directed cycle")
    return [dag.vocab[i] for i in order]


def topo_keyphrase(s: WcnGraph, source_component: int = 0, method: str = "topo") -> Keyphrase:
    """One phrase over all nodes of ``s`` in cycle-broken topological order."""
    dag = break_cycles(s)
    return Keyphrase(tuple(topo_order(dag)), density(dag), source_component, method)


def assortative_pieces(g: WcnGraph) -> tuple[list[tuple[int, WcnGraph]], int]:
    """Split ``g`` by deleting its lightest edges until no piece is disassortative.

    Each weakly connected component is shrunk one lightest edge at a time
    (ties to the smaller (tail, head)); components are recomputed after every
    removal and a piece stops once its degree correlation is non-negative,
    undefined, or it has fewer than two edges. The test is made per piece,
    so a component that is not disassortative is returned untouched.
    Returns ``(component_label, piece)`` pairs for pieces with at least two
    nodes, plus the number of removed edges.
    """
    comps = _component_id_sets(g)
    work = [(label, g.subgraph_ids(c)) for label, c in enumerate(comps) if len(c) >= 2]
    done: list[tuple[int, WcnGraph]] = []
    removed = 0
    work.reverse()
    while work:
        label, piece = work.pop()
        if piece.number_of_edges() < 2 or not is_disassortative(piece):
            done.append((label, piece))
            continue
        a, b, _ = min(piece.edge_ids(), key=lambda e: (e[2], e[0], e[1]))
        piece.remove_edge_id(a, b)
        removed += 1
        piece.drop_isolated()
        parts = [piece.subgraph_ids(c) for c in _component_id_sets(piece) if len(c) >= 2]
        work.extend((label, p) for p in reversed(parts))
    return done, removed


def barank(g: WcnGraph, top_n: int | None = None) -> list[Keyphrase]:
    """Density-ranked topological phrases of the assortativity-terminated pieces of ``g``."""
    if g.number_of_edges() == 0:
        raise ValueError("barank needs at least one edge")
    pieces, _ = assortative_pieces(g)
    phrases = sort_phrases(topo_keyphrase(p, label, "barank") for label, p in pieces)
    return phrases if top_n is None else phrases[:top_n]
