"""Document loading and automatic tokenization of short user-generated texts."""

from __future__ import annotations

import csv
import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "RawDocument",
    "TokenStream",
    "StopwordPolicy",
    "CorpusFormatError",
    "default_stopwords",
    "load_stopwords",
    "load_corpus",
    "clean_token",
    "preprocess",
    "preprocess_all",
    "domain_stopwords",
]

_URL_RE = re.compile(r"^(?:https?://|www\.)\S*$|^\S+\.(?:com|org|net|ly|co)/\S*$", re.IGNORECASE)
_EMOTICON_RE = re.compile(
    r"^(?:[<>]?[:;=8xX][\-o\*'^]?[\)\]\(\[dDpP/\\:\}\{@\|3]+|[\)\]\(\[dDpP/\\:\}\{@\|]+[\-o\*'^]?[:;=8]|<3+|</3+|\^_*\^|-_-)$"
)
_NON_ALNUM_RE = re.compile(r"[^a-z0-9]+")
_RT_MARKERS = frozenset({"rt"})


class CorpusFormatError(ValueError):
    """A record in a corpus file could not be parsed."""

    def __init__(self, path, line_no: int, message: str):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")


@dataclass(frozen=True)
class RawDocument:
    id: str
    text: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")


@dataclass(frozen=True)
class TokenStream:
    doc_id: str
    tokens: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


@dataclass(frozen=True)
class StopwordPolicy:
    """Stopword configuration.

    ``domain_fraction`` is the share of a window's vocabulary treated as
    domain stopwords by :func:`domain_stopwords`. An integer >= 1 is read as
    an absolute count instead.
    """

    base_list: frozenset[str] = field(default_factory=lambda: default_stopwords())
    domain_fraction: float = 0.01
    extra: frozenset[str] = frozenset()

    def with_extra(self, words: Iterable[str]) -> "StopwordPolicy":
        return StopwordPolicy(self.base_list, self.domain_fraction, self.extra | frozenset(words))

    def __contains__(self, word: str) -> bool:
        return word in self.base_list or word in self.extra


def _clean_list(words: Iterable[str]) -> frozenset[str]:
    out = set()
    for w in words:
        w = _NON_ALNUM_RE.sub("", w.strip().lower())
        if w:
            out.add(w)
    return frozenset(out)


_DEFAULT_STOPWORDS: frozenset[str] | None = None


def default_stopwords() -> frozenset[str]:
    """Built-in English stopword list (cleaned to the token alphabet)."""
    global _DEFAULT_STOPWORDS
    if _DEFAULT_STOPWORDS is None:
        text = resources.files("wcnevent").joinpath("data/stopwords_en.txt").read_text("utf-8")
        _DEFAULT_STOPWORDS = _clean_list(text.split())
    return _DEFAULT_STOPWORDS


def load_stopwords(path) -> frozenset[str]:
    """Read a one-word-per-line stopword override file."""
    with open(path, encoding="utf-8") as fh:
        return _clean_list(line for line in fh if line.strip())


def load_corpus(path, format: str | None = None) -> list[RawDocument]:
    """Load documents from a JSONL (``{"id", "text"}``) or TSV (``id<TAB>text``) file.

    The format is inferred from the file suffix when not given. A malformed
    record aborts the load with a :class:`CorpusFormatError` naming the line.
    """
    path = Path(path)
    if format is None:
        format = "tsv" if path.suffix.lower() in (".tsv", ".tab") else "jsonl"
    if format not in ("jsonl", "tsv"):
        raise ValueError(f"unknown corpus format {format!r}")

    docs = []
    with open(path, encoding="utf-8", newline="") as fh:
        if format == "jsonl":
            for line_no, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CorpusFormatError(path, line_no, f"invalid JSON ({exc.msg})") from None
                if not isinstance(rec, dict):
                    raise CorpusFormatError(path, line_no, "record is not an object")
                for key in ("id", "text"):
                    if not isinstance(rec.get(key), str):
                        raise CorpusFormatError(path, line_no, f"missing or non-string field {key!r}")
                if not rec["id"]:
                    raise CorpusFormatError(path, line_no, "empty id")
                docs.append(RawDocument(rec["id"], rec["text"]))
        else:
            reader = csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
            for line_no, row in enumerate(reader, 1):
                if not row or (len(row) == 1 and not row[0].strip()):
                    continue
                if len(row) < 2 or not row[0]:
                    raise CorpusFormatError(path, line_no, "expected id<TAB>text")
                docs.append(RawDocument(row[0], "\t".join(row[1:])))
    return docs


def clean_token(raw: str) -> str:
    """Reduce one whitespace-delimited chunk to the ``[a-z0-9]`` alphabet.

    Returns ``""`` for URLs, emoticons and pure punctuation. Leading ``#`` and
    ``@`` are dropped so hashtags and mentions survive as plain words.
    """
    if _URL_RE.match(raw) or _EMOTICON_RE.match(raw):
        return ""
    return _NON_ALNUM_RE.sub("", raw.lower().lstrip("#@"))


def preprocess(doc: RawDocument, policy: StopwordPolicy | None = None) -> TokenStream:
    if policy is None:
        policy = StopwordPolicy()
    tokens = []
    for chunk in doc.text.split():
        tok = clean_token(chunk)
        if not tok or tok in _RT_MARKERS or tok in policy:
            continue
        tokens.append(tok)
    return TokenStream(doc.id, tuple(tokens))


def preprocess_all(docs: Iterable[RawDocument], policy: StopwordPolicy | None = None) -> list[TokenStream]:
    if policy is None:
        policy = StopwordPolicy()
    return [preprocess(d, policy) for d in docs]


def _domain_count(vocab_size: int, t_s: float) -> int:
    if isinstance(t_s, int) and not isinstance(t_s, bool) and t_s >= 1:
        return min(t_s, vocab_size)
    if not 0 <= t_s < 1:
        raise ValueError(f"t_s must lie in [0, 1) or be an integer count, got {t_s!r}")
    return math.ceil(t_s * vocab_size)


def domain_stopwords(docs: Sequence[TokenStream], t_s: float) -> set[str]:
    """The most frequent words of ``docs``: ``ceil(t_s * |vocabulary|)`` of them.

    Ties in frequency go to the lexicographically smaller word.
    """
    counts = Counter(tok for d in docs for tok in d.tokens)
    n = _domain_count(len(counts), t_s)
    if n == 0:
        return set()
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return {w for w, _ in ranked[:n]}
