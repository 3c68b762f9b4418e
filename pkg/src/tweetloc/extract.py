"""Location-candidate extraction from tagged tokens.

Four independent sources feed the gazetteer verifier:

- proper-noun chunks: runs of PROPN/ADJ/DELIM starting at a proper noun,
  split at delimiters, with preposition and suffix cues attached
- suffix patterns: "<words> <suffix term>" windows, which catch locations in
  all-lowercase tweets where proper-noun detection is blind
- dependency proximity: nouns/proper nouns/adjectives within a few hops of an
  emergency word in the dependency graph
- noun phrases: contiguous ADJ/NOUN/PROPN runs

Candidates are unioned and deduplicated by their case-folded phrase; the
gazetteer is the final arbiter of what is real.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional, Sequence

from .normalize import Token, TokenKind
from .tagger import PosTag, TagLexicons, load_word_list

DEFAULT_JW_THRESHOLD = 0.90
DEFAULT_MAX_HOPS = 3

#: graph_distance result for disconnected token pairs
UNREACHABLE = None

SUFFIX_CATEGORIES = ("landform", "road", "building", "town", "direction")
EMERGENCY_CATEGORIES = ("disease", "disaster")


class CandidateSource(Enum):
    PROPER_CHUNK = "PROPER_CHUNK"
    SUFFIX_MATCH = "SUFFIX_MATCH"
    DEP_PROXIMITY = "DEP_PROXIMITY"
    NOUN_PHRASE = "NOUN_PHRASE"
    HASHTAG_ORIGINAL = "HASHTAG_ORIGINAL"
    HASHTAG_SEGMENT = "HASHTAG_SEGMENT"
    UNIGRAM = "UNIGRAM"
    BIGRAM = "BIGRAM"


class Cue(Enum):
    PRECEDING_PREPOSITION = "PRECEDING_PREPOSITION"
    SUFFIX_TERM = "SUFFIX_TERM"
    FUZZY_SUFFIX = "FUZZY_SUFFIX"


class GraphSource(Enum):
    SUPPLIED = "SUPPLIED"
    TOKEN_WINDOW_FALLBACK = "TOKEN_WINDOW_FALLBACK"


@dataclass(frozen=True)
class SuffixLexicon:
    """Words that typically follow a place name, grouped by category."""

    by_category: dict[str, frozenset[str]]

    def __post_init__(self) -> None:
        if not any(self.by_category.values()):
            raise ValueError("suffix lexicon must be non-empty")
        object.__setattr__(
            self, "terms", frozenset().union(*self.by_category.values())
        )

    terms: frozenset[str] = field(init=False)


@dataclass(frozen=True)
class EmergencyLexicon:
    """Epidemic and natural-disaster terms anchoring proximity extraction."""

    by_category: dict[str, frozenset[str]]

    def __post_init__(self) -> None:
        if not any(self.by_category.values()):
            raise ValueError("emergency lexicon must be non-empty")
        keys = set()
        for terms in self.by_category.values():
            for term in terms:
                keys.add(term)
                if term.endswith("s"):
                    keys.add(term[:-1])
        object.__setattr__(self, "_keys", frozenset(keys))

    _keys: frozenset[str] = field(init=False)

    def matches(self, word: str) -> bool:
        """Lowercase equality, tolerating a plural -s on either side."""
        w = word.lower()
        if w in self._keys:
            return True
        return w.endswith("s") and w[:-1] in self._keys


@lru_cache(maxsize=1)
def default_suffix_lexicon() -> SuffixLexicon:
    return SuffixLexicon(by_category={
        cat: _bundled(f"suffixes_{cat}.txt") for cat in SUFFIX_CATEGORIES
    })


@lru_cache(maxsize=1)
def default_emergency_lexicon() -> EmergencyLexicon:
    return EmergencyLexicon(by_category={
        cat: _bundled(f"emergency_{cat}.txt") for cat in EMERGENCY_CATEGORIES
    })


def _bundled(name: str) -> frozenset[str]:
    ref = resources.files("tweetloc.data").joinpath(name)
    return load_word_list(ref.read_text(encoding="utf-8"))


@dataclass
class CandidateMention:
    """A phrase proposed as a location, with the evidence that produced it."""

    phrase: str
    token_span: tuple[int, int]
    sources: set[CandidateSource]
    cues: set[Cue] = field(default_factory=set)
    fuzzy_suffix_score: Optional[float] = None

    def __post_init__(self) -> None:
        if not self.phrase.strip():
            raise ValueError("candidate phrase must be non-empty")
        if not self.sources:
            raise ValueError("candidate must have at least one source")
        if Cue.FUZZY_SUFFIX in self.cues and self.fuzzy_suffix_score is None:
            raise ValueError("FUZZY_SUFFIX cue requires a score")


@dataclass(frozen=True)
class DependencyGraph:
    """Undirected link structure over a tweet's tokens."""

    n: int
    edges: frozenset[tuple[int, int]]
    source: GraphSource

    def __post_init__(self) -> None:
        for a, b in self.edges:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"edge ({a}, {b}) out of range for n={self.n}")
            if a == b:
                raise ValueError(f"self-loop at {a}")

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]],
                   source: GraphSource) -> "DependencyGraph":
        return cls(n=n, edges=frozenset((min(a, b), max(a, b)) for a, b in pairs),
                   source=source)

    @classmethod
    def token_window(cls, n: int) -> "DependencyGraph":
        """Fallback graph chaining adjacent tokens, so hop count equals token
        offset distance."""
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)),
                              GraphSource.TOKEN_WINDOW_FALLBACK)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def graph_distance(g: DependencyGraph, i: int, j: int) -> Optional[int]:
    """Shortest undirected path length by BFS; None when unreachable."""
    if not (0 <= i < g.n and 0 <= j < g.n):
        raise ValueError(f"token index out of range: ({i}, {j}), n={g.n}")
    if i == j:
        return 0
    return _bfs_distances(g, i)[j]


def _bfs_distances(g: DependencyGraph, start: int) -> list[Optional[int]]:
    dist: list[Optional[int]] = [None] * g.n
    dist[start] = 0
    adj = g.adjacency()
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] is None:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def jaro_winkler(a: str, b: str) -> float:
    """Jaro similarity with the Winkler common-prefix boost (p=0.1, prefix
    capped at 4).  Symmetric, in [0, 1], and 1.0 only for equal non-empty
    strings."""
    if a == b:
        return 1.0 if a else 0.0
    if not a or not b:
        return 0.0
    window = max(len(a), len(b)) // 2 - 1
    if window < 0:
        window = 0
    a_flags = [False] * len(a)
    b_flags = [False] * len(b)
    matches = 0
    for i, ch in enumerate(a):
        lo = max(0, i - window)
        hi = min(len(b), i + window + 1)
        for j in range(lo, hi):
            if not b_flags[j] and b[j] == ch:
                a_flags[i] = b_flags[j] = True
                matches += 1
                break
    if matches == 0:
        return 0.0
    a_matched = [ch for ch, f in zip(a, a_flags) if f]
    b_matched = [ch for ch, f in zip(b, b_flags) if f]
    transpositions = sum(x != y for x, y in zip(a_matched, b_matched)) / 2.0
    jaro = (
        matches / len(a) + matches / len(b) + (matches - transpositions) / matches
    ) / 3.0
    prefix = 0
    for x, y in zip(a, b):
        if x != y or prefix == 4:
            break
        prefix += 1
    return jaro + prefix * 0.1 * (1.0 - jaro)


Tagged = Sequence[tuple[Token, PosTag]]


def chunk_proper_nouns(
    tagged: Tagged,
    suffixes: SuffixLexicon,
    lexicons: TagLexicons,
    theta_jw: float = DEFAULT_JW_THRESHOLD,
) -> list[CandidateMention]:
    """Proper-noun chunking with preposition and suffix cues.

    A run starts at a PROPN and extends through PROPN/ADJ/DELIM tokens; the
    run splits at delimiters, and each piece containing a proper noun becomes
    a candidate.  A suffix term right after a piece (or ending it) adds a
    SUFFIX_TERM cue; the suffixed and suffix-less variants are both emitted
    because gazetteers rarely store the suffixed form.
    """
    if not 0.0 < theta_jw <= 1.0:
        raise ValueError("theta_jw must be in (0, 1]")
    out: list[CandidateMention] = []
    n = len(tagged)
    i = 0
    while i < n:
        if tagged[i][1] is not PosTag.PROPN:
            i += 1
            continue
        j = i
        while j + 1 < n and tagged[j + 1][1] in (PosTag.PROPN, PosTag.ADJ, PosTag.DELIM):
            j += 1
        for lo, hi in _split_at_delims(tagged, i, j):
            if any(tagged[k][1] is PosTag.PROPN for k in range(lo, hi + 1)):
                out.extend(_piece_candidates(tagged, lo, hi, suffixes, lexicons, theta_jw))
        i = j + 1
    return out


def _split_at_delims(tagged: Tagged, lo: int, hi: int) -> list[tuple[int, int]]:
    pieces = []
    start = lo
    for k in range(lo, hi + 1):
        if tagged[k][1] is PosTag.DELIM:
            if k > start:
                pieces.append((start, k - 1))
            start = k + 1
    if hi >= start:
        pieces.append((start, hi))
    return pieces


def _piece_candidates(
    tagged: Tagged,
    lo: int,
    hi: int,
    suffixes: SuffixLexicon,
    lexicons: TagLexicons,
    theta_jw: float,
) -> list[CandidateMention]:
    cues: set[Cue] = set()
    prev = lo - 1
    if prev >= 0 and tagged[prev][1] is PosTag.ADP and \
            tagged[prev][0].surface.lower() in lexicons.location_prepositions:
        cues.add(Cue.PRECEDING_PREPOSITION)

    words = [tagged[k][0].surface for k in range(lo, hi + 1)]
    phrase = " ".join(words)
    nxt = hi + 1
    following = None
    if nxt < len(tagged) and tagged[nxt][0].kind is TokenKind.WORD:
        following = tagged[nxt][0].surface

    if following is not None and following.lower() in suffixes.terms:
        # absorb the suffix word; also emit the bare phrase
        cues.add(Cue.SUFFIX_TERM)
        return [
            CandidateMention(f"{phrase} {following}", (lo, nxt),
                             {CandidateSource.PROPER_CHUNK}, set(cues)),
            CandidateMention(phrase, (lo, hi), {CandidateSource.PROPER_CHUNK}, set(cues)),
        ]
    if hi > lo and words[-1].lower() in suffixes.terms:
        # the piece itself ends in a suffix word (e.g. a capitalized "Hospital")
        cues.add(Cue.SUFFIX_TERM)
        return [
            CandidateMention(phrase, (lo, hi), {CandidateSource.PROPER_CHUNK}, set(cues)),
            CandidateMention(" ".join(words[:-1]), (lo, hi - 1),
                             {CandidateSource.PROPER_CHUNK}, set(cues)),
        ]
    score = None
    if following is not None:
        score = max((jaro_winkler(following.lower(), term) for term in suffixes.terms),
                    default=0.0)
        if score >= theta_jw:
            cues.add(Cue.FUZZY_SUFFIX)
        else:
            score = None
    return [CandidateMention(phrase, (lo, hi), {CandidateSource.PROPER_CHUNK},
                             cues, fuzzy_suffix_score=score)]


def suffix_pattern_candidates(
    tagged: Tagged,
    suffixes: SuffixLexicon,
    emergencies: EmergencyLexicon,
) -> list[CandidateMention]:
    """Suffix-anchored window candidates for lowercase text.

    For every token that is itself a suffix term, the one and two preceding
    tokens join it, provided none of them is a preposition, delimiter, or
    emergency word.
    """
    out: list[CandidateMention] = []
    for idx, (tok, tag) in enumerate(tagged):
        if tok.kind is not TokenKind.WORD or tok.surface.lower() not in suffixes.terms:
            continue
        for k in (1, 2):
            lo = idx - k
            if lo < 0:
                continue
            window = tagged[lo:idx]
            if any(
                t.kind is not TokenKind.WORD
                or tg in (PosTag.ADP, PosTag.DELIM)
                or emergencies.matches(t.surface)
                for t, tg in window
            ):
                continue
            head = " ".join(t.surface for t, _ in window)
            out.append(CandidateMention(f"{head} {tok.surface}", (lo, idx),
                                        {CandidateSource.SUFFIX_MATCH}, {Cue.SUFFIX_TERM}))
            out.append(CandidateMention(head, (lo, idx - 1),
                                        {CandidateSource.SUFFIX_MATCH}, {Cue.SUFFIX_TERM}))
    return out


def dependency_candidates(
    tagged: Tagged,
    g: DependencyGraph,
    emergencies: EmergencyLexicon,
    d_max: int = DEFAULT_MAX_HOPS,
) -> list[CandidateMention]:
    """Nouns, proper nouns and adjectives within ``d_max`` hops of an
    emergency word; adjacent hits merge into one phrase."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    if g.n != len(tagged):
        raise ValueError(f"graph has {g.n} nodes for {len(tagged)} tokens")
    anchors = [
        i for i, (tok, _) in enumerate(tagged)
        if tok.kind is TokenKind.WORD and emergencies.matches(tok.surface)
    ]
    if not anchors:
        return []
    collected: set[int] = set()
    for a in anchors:
        dist = _bfs_distances(g, a)
        for i, (tok, tag) in enumerate(tagged):
            if i == a or tag not in (PosTag.PROPN, PosTag.NOUN, PosTag.ADJ):
                continue
            if emergencies.matches(tok.surface):
                continue
            if dist[i] is not None and dist[i] <= d_max:
                collected.add(i)
    out = []
    for lo, hi in _merge_adjacent(sorted(collected)):
        phrase = " ".join(tagged[k][0].surface for k in range(lo, hi + 1))
        out.append(CandidateMention(phrase, (lo, hi), {CandidateSource.DEP_PROXIMITY}))
    return out


def _merge_adjacent(indices: list[int]) -> list[tuple[int, int]]:
    runs = []
    for i in indices:
        if runs and i == runs[-1][1] + 1:
            runs[-1] = (runs[-1][0], i)
        else:
            runs.append((i, i))
    return runs


def noun_phrase_candidates(tagged: Tagged) -> list[CandidateMention]:
    """Maximal ADJ/NOUN/PROPN runs containing at least one noun."""
    out = []
    run_start = None
    for i in range(len(tagged) + 1):
        in_run = i < len(tagged) and tagged[i][1] in (PosTag.ADJ, PosTag.NOUN, PosTag.PROPN)
        if in_run and run_start is None:
            run_start = i
        elif not in_run and run_start is not None:
            if any(tagged[k][1] in (PosTag.NOUN, PosTag.PROPN) for k in range(run_start, i)):
                phrase = " ".join(tagged[k][0].surface for k in range(run_start, i))
                out.append(CandidateMention(phrase, (run_start, i - 1),
                                            {CandidateSource.NOUN_PHRASE}))
            run_start = None
    return out


def normalize_phrase(phrase: str) -> str:
    return " ".join(phrase.lower().split())


def dedup_candidates(candidates: Iterable[CandidateMention]) -> list[CandidateMention]:
    """Union candidates by case-folded phrase, merging sources and cues."""
    merged: dict[str, CandidateMention] = {}
    order: list[str] = []
    for cand in candidates:
        key = normalize_phrase(cand.phrase)
        kept = merged.get(key)
        if kept is None:
            merged[key] = replace(
                cand, sources=set(cand.sources), cues=set(cand.cues)
            )
            order.append(key)
        else:
            kept.sources |= cand.sources
            kept.cues |= cand.cues
            if cand.fuzzy_suffix_score is not None:
                if kept.fuzzy_suffix_score is None or \
                        cand.fuzzy_suffix_score > kept.fuzzy_suffix_score:
                    kept.fuzzy_suffix_score = cand.fuzzy_suffix_score
    return [merged[k] for k in order]
