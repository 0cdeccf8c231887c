"""Analytic hierarchy process ranking of keyphrases over four graph attributes.

Attributes, in matrix order:

* ``esd`` edge strength density, mean weight of the phrase's own edges (benefit)
* ``sd`` strength difference, distance between ``esd`` and the mean of the
  first word's in-strength and the last word's out-strength (cost)
* ``pd`` phrase degree, edges leaving the phrase counted from its words (benefit)
* ``dc`` degree computation, boundary in/out degree relative to ``pd`` (benefit)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .phrase import Keyphrase
from .wcn import WcnGraph

__all__ = [
    "ATTRIBUTES",
    "BENEFICIAL",
    "RANDOM_INDEX",
    "DEFAULT_PCM",
    "InconsistentPcmError",
    "AhpAttributes",
    "AhpModel",
    "RankedPhrase",
    "parse_pcm",
    "load_pcm",
    "compute_attributes",
    "normalize",
    "pcm_weights",
    "build_model",
    "classify_slot",
    "rank",
    "rank_phrases",
]

ATTRIBUTES = ("esd", "sd", "pd", "dc")
BENEFICIAL = np.array([True, False, True, True])

# Saaty's random consistency index by matrix order.
RANDOM_INDEX = {1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49}


class InconsistentPcmError(ValueError):
    pass


def parse_pcm(data, tol: float = 0.02) -> np.ndarray:
    """Validate a square positive comparison matrix and make it exactly reciprocal.

    Accepts text (whitespace-separated rows) or anything array-like. In each
    mirrored pair the entry >= 1 is kept and the other becomes its exact
    reciprocal, so rounded inputs such as ``0.33`` for ``1/3`` are accepted
    when ``a_ij * a_ji`` is within ``tol`` of 1.
    """
    if isinstance(data, str):
        rows = [line.split() for line in data.strip().splitlines() if line.strip()]
        try:
            A = np.array([[float(x) for x in r] for r in rows])
        except ValueError as exc:
            raise ValueError(f"non-numeric comparison matrix entry: {exc}") from None
    else:
        A = np.array(data, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"comparison matrix must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)) or np.any(A <= 0):
        raise ValueError("comparison matrix entries must be positive and finite")
    n = A.shape[0]
    if not np.allclose(np.diag(A), 1.0):
        raise ValueError("comparison matrix diagonal must be 1")
    out = np.ones_like(A)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(A[i, j] * A[j, i] - 1.0) > tol:
                raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not reciprocal")
            if A[i, j] >= A[j, i]:
                out[i, j], out[j, i] = A[i, j], 1.0 / A[i, j]
            else:
                out[i, j], out[j, i] = 1.0 / A[j, i], A[j, i]
    return out


def load_pcm(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_pcm(fh.read())


DEFAULT_PCM = parse_pcm(
    """
    1.00 5.00 3.00 5.00
    0.20 1.00 0.33 1.00
    0.33 3.00 1.00 3.00
    0.20 1.00 0.33 1.00
    """
)


@dataclass(frozen=True)
class AhpAttributes:
    esd: float
    sd: float
    pd: int
    dc: float

    def as_row(self) -> list[float]:
        return [self.esd, self.sd, float(self.pd), self.dc]


def _path_edges(words: Sequence[str], g: WcnGraph) -> list[tuple[str, str, int]]:
    edges = []
    for u, v in zip(words, words[1:]):
        if not g.has_edge(u, v):
            raise ValueError(f"phrase is not a path in the graph: missing {u!r} -> {v!r}")
        edges.append((u, v, g.weight(u, v)))
    return edges


def compute_attributes(phrase: Keyphrase | Sequence[str], g: WcnGraph, edges=None) -> AhpAttributes:
    """Attributes of a phrase measured against the graph ``g`` it came from.

    By default the phrase must be a directed path in ``g`` and its own edges
    are the path edges. A phrase ordered from a non-path subgraph passes
    that subgraph's ``(tail, head, weight)`` edges instead.
    """
    words = tuple(phrase.words if isinstance(phrase, Keyphrase) else phrase)
    if len(words) < 2:
        raise ValueError("a phrase needs at least two words")
    for w in words:
        if w not in g:
            raise ValueError(f"phrase word {w!r} is not in the graph")
    own = _path_edges(words, g) if edges is None else list(edges)
    if not own:
        raise ValueError("phrase has no edges")
    esd = sum(w for _, _, w in own) / len(own)
    first, last = g.index[words[0]], g.index[words[-1]]
    boundary_strength = (g.in_strength_id(first) + g.out_strength_id(last)) / 2
    sd = abs(esd - boundary_strength)
    pd = sum(g.degree_id(g.index[w]) for w in words) - 2 * len(own)
    boundary_degree = g.in_degree_id(first) + g.out_degree_id(last)
    dc = boundary_degree / pd if pd > 0 else 1.0
    return AhpAttributes(esd, sd, pd, dc)


def normalize(matrix, beneficial=BENEFICIAL) -> np.ndarray:
    """Column-wise ratio normalization: ``v / max`` for benefits, ``min / v`` for costs.

    Cost columns containing negatives are shifted up by ``-min`` first, and a
    value equal to the column minimum always maps to 1.
    """
    M = np.array(matrix, dtype=float)
    if M.ndim != 2:
        raise ValueError("decision matrix must be 2-D")
    N = np.ones_like(M)
    for j in range(M.shape[1]):
        col = M[:, j]
        if beneficial[j]:
            top = col.max()
            N[:, j] = col / top if top > 0 else 1.0
        else:
            lo = col.min()
            if lo < 0:
                col = col - lo
                lo = 0.0
            with np.errstate(divide="ignore", invalid="ignore"):
                N[:, j] = np.where(col == lo, 1.0, lo / col)
    return N


def pcm_weights(pcm) -> tuple[np.ndarray, np.ndarray, float]:
    """Row geometric means, their normalized weights, and the sum of the means."""
    A = np.asarray(pcm, dtype=float)
    gm = np.prod(A, axis=1) ** (1.0 / A.shape[0])
    total = float(gm.sum())
    return gm, gm / total, total


@dataclass(frozen=True)
class AhpModel:
    decision_matrix: np.ndarray
    normalized: np.ndarray
    pcm: np.ndarray
    weights: np.ndarray
    row_gm: np.ndarray
    gm: float
    lambda_max: float
    ci: float
    cr: float
    ri: float

    def scores(self) -> np.ndarray:
        return self.normalized @ self.weights

    def diagnostics(self) -> dict:
        return {
            "weights": [float(x) for x in self.weights],
            "gm": self.gm,
            "lambda_max": self.lambda_max,
            "ci": self.ci,
            "cr": self.cr,
            "ri": self.ri,
        }


def consistency(pcm, weights) -> tuple[float, float, float, float]:
    """``(lambda_max, ci, cr, ri)`` for a comparison matrix and its weights."""
    A = np.asarray(pcm, dtype=float)
    n = A.shape[0]
    lam = float(np.mean((A @ weights) / weights))
    ci = (lam - n) / (n - 1) if n > 1 else 0.0
    ri = RANDOM_INDEX.get(n)
    if ri is None:
        raise ValueError(f"no random index for a {n}x{n} matrix")
    cr = ci / ri if ri > 0 else 0.0
    return lam, ci, cr, ri


def build_model(attrs: Sequence[AhpAttributes], pcm=None, max_cr: float = 0.1) -> AhpModel:
    if not attrs:
        raise ValueError("at least one alternative is required")
    A = DEFAULT_PCM if pcm is None else parse_pcm(pcm)
    if A.shape != (4, 4):
        raise ValueError("comparison matrix must be 4x4, one row per attribute")
    row_gm, w, gm = pcm_weights(A)
    lam, ci, cr, ri = consistency(A, w)
    if cr >= max_cr:
        raise InconsistentPcmError(f"consistency ratio {cr:.4f} is not below {max_cr}")
    M = np.array([a.as_row() for a in attrs], dtype=float)
    return AhpModel(M, normalize(M), A, w, row_gm, gm, lam, ci, cr, ri)


@dataclass(frozen=True)
class RankedPhrase:
    phrase: Keyphrase
    score: float
    rank: int
    slot: str

    def to_dict(self) -> dict:
        return {"rank": self.rank, "score": self.score, "slot": self.slot, "words": list(self.phrase.words)}


def classify_slot(n_words: int, description_over: int = 12, relevant_upto: int = 3) -> str:
    if n_words > description_over:
        return "description"
    if n_words <= relevant_upto:
        return "relevant"
    return "headline"


def rank(
    model: AhpModel,
    phrases: Sequence[Keyphrase],
    description_over: int = 12,
    relevant_upto: int = 3,
) -> list[RankedPhrase]:
    """Order phrases by weighted normalized score, highest first."""
    if len(phrases) != model.normalized.shape[0]:
        raise ValueError("one phrase per alternative is required")
    scores = model.scores()
    order = sorted(range(len(phrases)), key=lambda i: (-scores[i], phrases[i].words))
    return [
        RankedPhrase(
            phrases[i],
            float(scores[i]),
            r,
            classify_slot(len(phrases[i].words), description_over, relevant_upto),
        )
        for r, i in enumerate(order, 1)
    ]


def rank_phrases(phrases: Sequence[Keyphrase], g: WcnGraph, pcm=None, edges=None, **slot_kw) -> list[RankedPhrase]:
    """Compute attributes in ``g``, build a model and rank in one call.

    ``edges`` optionally gives each phrase's own edges (see ``compute_attributes``).
    """
    if not phrases:
        return []
    own = edges if edges is not None else [None] * len(phrases)
    attrs = [compute_attributes(p, g, e) for p, e in zip(phrases, own)]
    return rank(build_model(attrs, pcm), phrases, **slot_kw)
