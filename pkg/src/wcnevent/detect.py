"""Event phrases from a document stream: batch extraction and the sliding-window detector."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Iterator, Sequence

from .ahp import rank_phrases
from .corpus import RawDocument, StopwordPolicy, TokenStream, _domain_count, domain_stopwords, preprocess
from .decompose import top_edges
from .phrase import Keyphrase, assortative_pieces, break_cycles, topo_keyphrase
from .wcn import WcnGraph, _component_id_sets, build_wcn

__all__ = [
    "DetectorConfig",
    "EventPhrase",
    "twcm",
    "obtain_events",
    "windows",
    "detect_events",
]


@dataclass(frozen=True)
class DetectorConfig:
    """Sliding-window parameters.

    ``M_q = ceil(m * M_G)`` is derived: a component needs more than ``M_q``
    nodes to be decomposed, and a decomposed piece more than ``M_G`` nodes to
    yield a phrase. ``t_s`` is a vocabulary fraction, or a count if an int >= 1.
    """

    window_size: int = 200
    m: float = 2.0
    M_G: int = 2
    t_s: float = 0.01
    top_n: int = 10
    pcm: tuple | None = None

    def __post_init__(self):
        if self.window_size < 1:
            raise ValueError("window_size must be >= 1")
        if self.m <= 0:
            raise ValueError("m must be positive")
        if self.M_G < 1:
            raise ValueError("M_G must be >= 1")
        if self.top_n < 1:
            raise ValueError("top_n must be >= 1")
        _domain_count(0, self.t_s)

    @property
    def M_q(self) -> int:
        return math.ceil(self.m * self.M_G)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["M_q"] = self.M_q
        if self.pcm is not None:
            d["pcm"] = [list(r) for r in self.pcm]
        return d


@dataclass(frozen=True)
class EventPhrase:
    words: tuple[str, ...]
    window_index: int
    rank: int
    score: float

    def to_dict(self) -> dict:
        return {"window": self.window_index, "rank": self.rank, "score": self.score, "words": list(self.words)}


def twcm(docs: Sequence[TokenStream]) -> list[Keyphrase]:
    """Keep the ``floor(sqrt(edges))`` heaviest edges and order each remaining component."""
    g = build_wcn(docs)
    n_e = g.number_of_edges()
    if n_e == 0:
        return []
    kept = top_edges(g, max(1, math.isqrt(n_e)))
    return [
        topo_keyphrase(kept.subgraph_ids(c), label, "topo")
        for label, c in enumerate(_component_id_sets(kept))
        if len(c) >= 2
    ]


def _events_with_edges(component: WcnGraph, M_G: int, label: int = 0):
    pieces, _ = assortative_pieces(component)
    out = []
    for _, piece in pieces:
        if piece.number_of_nodes() > M_G:
            phrase = topo_keyphrase(piece, label, "barank")
            out.append((phrase, break_cycles(piece).edges()))
    return out


def obtain_events(component: WcnGraph, M_G: int) -> list[Keyphrase]:
    """Phrases of the non-disassortative pieces that keep more than ``M_G`` nodes."""
    return [p for p, _ in _events_with_edges(component, M_G)]


def windows(docs: Iterable[RawDocument], size: int) -> Iterator[list[RawDocument]]:
    """Consecutive batches of ``size`` documents; the last may be shorter."""
    batch: list[RawDocument] = []
    for d in docs:
        batch.append(d)
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch


def _window_events(batch: list[RawDocument], index: int, cfg: DetectorConfig, policy: StopwordPolicy) -> list[EventPhrase]:
    streams = [preprocess(d, policy) for d in batch]
    local = domain_stopwords(streams, cfg.t_s)
    if local:
        streams = [TokenStream(s.doc_id, tuple(t for t in s.tokens if t not in local)) for s in streams]
    g = build_wcn(streams)
    found = []
    for label, comp in enumerate(_component_id_sets(g)):
        if len(comp) > cfg.M_q:
            found.extend(_events_with_edges(g.subgraph_ids(comp), cfg.M_G, label))
    if not found:
        return []
    phrases = [p for p, _ in found]
    ranked = rank_phrases(phrases, g, cfg.pcm, [e for _, e in found])
    return [EventPhrase(r.phrase.words, index, r.rank, r.score) for r in ranked[: cfg.top_n]]


def detect_events(
    docs: Iterable[RawDocument], cfg: DetectorConfig = DetectorConfig(), policy: StopwordPolicy | None = None
) -> list[EventPhrase]:
    """Run the window pipeline over a stream and return events in window order."""
    policy = policy or StopwordPolicy(domain_fraction=cfg.t_s)
    out: list[EventPhrase] = []
    for k, batch in enumerate(windows(docs, cfg.window_size)):
        out.extend(_window_events(batch, k, cfg, policy))
    return out
