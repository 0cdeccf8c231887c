"""Scoring extracted phrases and events against ground-truth topics."""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .corpus import StopwordPolicy, clean_token

__all__ = [
    "Topic",
    "GroundTruth",
    "EvalReport",
    "load_ground_truth",
    "prf",
    "ngrams",
    "lcs_length",
    "rouge",
    "bpref",
    "topic_metrics",
    "redundancy",
    "evaluate",
]


@dataclass(frozen=True)
class Topic:
    title: str
    keywords: tuple[str, ...]

    @property
    def keyword_set(self) -> frozenset[str]:
        return frozenset(self.keywords)


@dataclass(frozen=True)
class GroundTruth:
    topics: dict[str, Topic]
    relevance: dict[str, str] = field(default_factory=dict)


def _clean_words(words: Iterable[str], policy: StopwordPolicy) -> tuple[str, ...]:
    out = []
    for raw in words:
        for chunk in raw.split():
            t = clean_token(chunk)
            if t and t not in policy and t not in out:
                out.append(t)
    return tuple(out)


def load_ground_truth(topics_path, relevance_path=None, policy: StopwordPolicy | None = None) -> GroundTruth:
    """Read ``{topic_id, title, keywords}`` JSON lines and an optional
    ``doc_id<TAB>topic_id`` relevance file. Keywords are cleaned like tokens."""
    policy = policy or StopwordPolicy()
    topics: dict[str, Topic] = {}
    with open(topics_path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                tid = str(rec["topic_id"])
                kws = _clean_words(rec["keywords"], policy)
                title = rec.get("title", "")
            except (json.JSONDecodeError, KeyError, TypeError, AttributeError) as exc:
                raise ValueError(f"{topics_path}:{line_no}: bad topic record ({exc})") from None
            topics[tid] = Topic(title, kws)
    relevance: dict[str, str] = {}
    if relevance_path is not None:
        with open(relevance_path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                parts = line.rstrip("\n").split("\t")
                if len(parts) < 2:
                    raise ValueError(f"{relevance_path}:{line_no}: expected doc_id<TAB>topic_id")
                relevance[parts[0]] = parts[1]
    return GroundTruth(topics, relevance)


def prf(candidate: Iterable[str], reference: Iterable[str]) -> tuple[float, float, float]:
    """Recall, precision and their harmonic mean over word sets."""
    cand, ref = set(candidate), set(reference)
    if not ref:
        raise ValueError("reference set must be non-empty")
    hit = len(cand & ref)
    r = hit / len(ref)
    p = hit / len(cand) if cand else 0.0
    f = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return r, p, f


def ngrams(seq: Sequence[str], n: int) -> set[tuple[str, ...]]:
    return {tuple(seq[i:i + n]) for i in range(len(seq) - n + 1)}


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def rouge(candidate: Sequence[str], reference: Sequence[str], variant: str = "r1") -> float:
    """Recall-oriented overlap. ``r1``/``r2`` count distinct shared n-grams over
    distinct reference n-grams; ``rl`` is LCS length over reference length."""
    if not reference:
        raise ValueError("reference must be non-empty")
    if variant == "rl":
        return lcs_length(candidate, reference) / len(reference)
    if variant not in ("r1", "r2"):
        raise ValueError(f"unknown rouge variant {variant!r}")
    n = 1 if variant == "r1" else 2
    ref = ngrams(reference, n)
    if not ref:
        warnings.warn(f"reference shorter than {n} tokens; score is 0", RuntimeWarning, stacklevel=2)
        return 0.0
    return len(ngrams(candidate, n) & ref) / len(ref)


def bpref(extracted: Sequence[str], correct: Iterable[str]) -> float:
    """Mean over correct extracted words of ``1 - (incorrect words above it) / len(extracted)``."""
    if not extracted:
        raise ValueError("extracted list must be non-empty")
    good = set(correct)
    m = len(extracted)
    wrong_above = 0
    total = 0.0
    hits = 0
    for w in extracted:
        if w in good:
            total += 1 - wrong_above / m
            hits += 1
        else:
            wrong_above += 1
    return total / hits if hits else 0.0


def _required(n_keywords: int, match_fraction: float) -> int:
    return max(1, math.ceil(match_fraction * n_keywords))


def topic_metrics(
    candidates: Sequence[Iterable[str]], truth: GroundTruth, match_fraction: float = 0.5
) -> tuple[float, float, float]:
    """Topic recall, keyword recall and keyword precision over matched pairs.

    A candidate matches a topic when it holds at least
    ``ceil(match_fraction * |keywords|)`` of the topic's keywords.
    Keyword recall pools each detected topic's keywords found by any of its
    matching candidates; keyword precision pools each matching candidate's
    words that belong to any topic it matches.
    """
    if not truth.topics:
        raise ValueError("ground truth has no topics")
    if not 0 < match_fraction <= 1:
        raise ValueError("match_fraction must lie in (0, 1]")
    cands = [set(c) for c in candidates]
    topics = [t.keyword_set for t in truth.topics.values()]
    pairs = [
        (ci, ti)
        for ti, kw in enumerate(topics)
        if kw
        for ci, c in enumerate(cands)
        if len(c & kw) >= _required(len(kw), match_fraction)
    ]
    detected = sorted({ti for _, ti in pairs})
    matched = sorted({ci for ci, _ in pairs})
    t_rec = len(detected) / len(topics)
    if not pairs:
        return t_rec, 0.0, 0.0
    found = kw_total = 0
    for ti in detected:
        union = set().union(*(cands[ci] for ci, t in pairs if t == ti))
        found += len(topics[ti] & union)
        kw_total += len(topics[ti])
    right = emitted = 0
    for ci in matched:
        union = set().union(*(topics[ti] for c, ti in pairs if c == ci))
        right += len(cands[ci] & union)
        emitted += len(cands[ci])
    return t_rec, found / kw_total, right / emitted if emitted else 0.0


def redundancy(phrases: Sequence[Iterable[str]], overlap: float = 0.5) -> float:
    """Share of phrases whose word-set Jaccard similarity with an earlier phrase exceeds ``overlap``."""
    if not 0 < overlap <= 1:
        raise ValueError("overlap must lie in (0, 1]")
    sets = [set(p) for p in phrases]
    if not sets:
        return 0.0
    repeats = 0
    for i, s in enumerate(sets):
        for t in sets[:i]:
            union = s | t
            if union and len(s & t) / len(union) > overlap:
                repeats += 1
                break
    return repeats / len(sets)


@dataclass(frozen=True)
class EvalReport:
    recall: float
    precision: float
    f_measure: float
    rouge_1: float
    rouge_2: float
    rouge_l: float
    bpref: float
    t_rec: float
    k_rec: float
    k_prec: float
    redundancy: float
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def evaluate(
    phrases: Sequence[Sequence[str]],
    truth: GroundTruth,
    match_fraction: float = 0.5,
    overlap: float = 0.5,
    policy: StopwordPolicy | None = None,
) -> EvalReport:
    """Score a ranked list of phrases against every ground-truth topic.

    Word-level recall/precision and bpref use the union of topic keywords.
    Each ROUGE variant takes, per topic, the best phrase against the topic
    title (keywords when the title is empty) and averages over topics.
    When a relevance mapping is present only topics it mentions are scored.
    """
    policy = policy or StopwordPolicy()
    topics = truth.topics
    if truth.relevance:
        judged = set(truth.relevance.values())
        topics = {k: v for k, v in topics.items() if k in judged}
        truth = GroundTruth(topics, truth.relevance)
    if not topics:
        raise ValueError("no ground-truth topics to evaluate against")
    reference = set().union(*(t.keyword_set for t in topics.values()))
    ordered: list[str] = []
    for p in phrases:
        for w in p:
            if w not in ordered:
                ordered.append(w)
    r, p, f = prf(ordered, reference) if reference else (0.0, 0.0, 0.0)
    rouges = {}
    for variant in ("r1", "r2", "rl"):
        per_topic = []
        for t in topics.values():
            ref = _clean_words([t.title], policy) if t.title else t.keywords
            if not ref:
                continue
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                per_topic.append(max((rouge(list(c), list(ref), variant) for c in phrases), default=0.0))
        rouges[variant] = sum(per_topic) / len(per_topic) if per_topic else 0.0
    bp = bpref(ordered, reference) if ordered else 0.0
    t_rec, k_rec, k_prec = topic_metrics(phrases, truth, match_fraction)
    return EvalReport(
        recall=r,
        precision=p,
        f_measure=f,
        rouge_1=rouges["r1"],
        rouge_2=rouges["r2"],
        rouge_l=rouges["rl"],
        bpref=bp,
        t_rec=t_rec,
        k_rec=k_rec,
        k_prec=k_prec,
        redundancy=redundancy(phrases, overlap),
        meta={"match_fraction": match_fraction, "overlap": overlap, "topics": len(topics), "phrases": len(phrases)},
    )
