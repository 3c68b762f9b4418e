"""Maximum-likelihood word segmentation for hashtag bodies.

A unigram frequency model scores candidate segmentations; dynamic programming
finds the split maximizing the summed base-10 log probabilities.  Out-of-
vocabulary chunks get a length-penalized score, 10 / (total * 10^len), so a
long unknown blob never beats a split into known words.

Scores are compared with exact rational arithmetic so ties break
deterministically (fewer words first, then lexicographically smallest word
list) and the result provably matches brute-force enumeration.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, TextIO, Union

from .normalize import split_camel_case

DEFAULT_MAX_WORD_LEN = 20

_NON_ALNUM_RE = re.compile(r"[^a-z0-9]+")


@dataclass(frozen=True)
class UnigramModel:
    counts: dict[str, int]
    total: int
    max_word_len: int = DEFAULT_MAX_WORD_LEN

    def prob(self, word: str) -> Fraction:
        count = self.counts.get(word)
        if count is not None:
            return Fraction(count, self.total)
        return Fraction(10, self.total * 10 ** len(word))

    def log_prob(self, word: str) -> float:
        count = self.counts.get(word)
        if count is not None:
            return math.log10(count) - math.log10(self.total)
        return 1.0 - math.log10(self.total) - len(word)


@dataclass(frozen=True)
class Segmentation:
    words: list[str]
    log_score: float


def load_unigram_model(
    stream: Union[TextIO, Iterable[str]],
    max_word_len: int = DEFAULT_MAX_WORD_LEN,
) -> UnigramModel:
    """Load a "word<TAB>count" model; duplicate words (after lowercasing) sum.

    Raises ValueError naming the offending line on malformed input, and on an
    empty stream.
    """
    counts: dict[str, int] = {}
    total = 0
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ValueError(f"unigram model line {lineno}: expected 'word<TAB>count'")
        word, raw_count = fields[0].strip().lower(), fields[1].strip()
        try:
            count = int(raw_count)
        except ValueError:
            raise ValueError(f"unigram model line {lineno}: count {raw_count!r} is not an integer") from None
        if not word or count <= 0:
            raise ValueError(f"unigram model line {lineno}: word must be non-empty and count positive")
        counts[word] = counts.get(word, 0) + count
        total += count
    if not counts:
        raise ValueError("unigram model is empty")
    return UnigramModel(counts=counts, total=total, max_word_len=max_word_len)


@lru_cache(maxsize=1)
def default_unigram_model() -> UnigramModel:
    """The bundled ~50k-entry frequency model."""
    ref = resources.files("tweetloc.data").joinpath("unigrams.tsv")
    with ref.open("r", encoding="utf-8") as f:
        return load_unigram_model(f)


def segment_word(model: UnigramModel, s: str) -> Segmentation:
    """Best segmentation of ``s`` (lowercased) under ``model``.

    Ties break toward fewer words, then the lexicographically smallest word
    list; identical inputs always yield identical outputs.
    """
    if not s or any(ch.isspace() for ch in s):
        raise ValueError("segment_word expects a non-empty string without whitespace")
    s = s.lower()
    n = len(s)
    # best[i]: (product, nwords, words) for s[:i]; product is exact
    best: list[tuple[Fraction, int, tuple[str, ...]] | None] = [None] * (n + 1)
    best[0] = (Fraction(1), 0, ())
    for i in range(1, n + 1):
        for j in range(max(0, i - model.max_word_len), i):
            prev = best[j]
            if prev is None:
                continue
            word = s[j:i]
            cand = (prev[0] * model.prob(word), prev[1] + 1, prev[2] + (word,))
            if best[i] is None or _better(cand, best[i]):
                best[i] = cand
    _, _, words = best[n]  # always reachable: single-character segments are allowed
    return Segmentation(words=list(words), log_score=math.fsum(model.log_prob(w) for w in words))


def _better(a: tuple[Fraction, int, tuple[str, ...]], b: tuple[Fraction, int, tuple[str, ...]]) -> bool:
    if a[0] != b[0]:
        return a[0] > b[0]
    if a[1] != b[1]:
        return a[1] < b[1]
    return a[2] < b[2]


def hashtag_expansions(model: UnigramModel, hashtag_body: str) -> list[str]:
    """Phrases a hashtag may stand for: the verbatim body first, then the
    underscore split, the CamelCase split, and the model's best segmentation,
    case-insensitively deduplicated."""
    if not hashtag_body:
        raise ValueError("hashtag body must be non-empty")
    variants = [hashtag_body]
    if "_" in hashtag_body:
        parts = [p for p in hashtag_body.split("_") if p]
        if parts:
            variants.append(" ".join(parts))
    camel = split_camel_case(hashtag_body) if "_" not in hashtag_body else []
    if len(camel) > 1:
        variants.append(" ".join(camel))
    squeezed = _NON_ALNUM_RE.sub("", hashtag_body.lower())
    if squeezed:
        variants.append(" ".join(segment_word(model, squeezed).words))
    out: list[str] = []
    seen: set[str] = set()
    for v in variants:
        key = v.lower()
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out
