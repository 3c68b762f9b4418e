"""End-to-end extraction per tweet, plus the unigram/bigram baselines.

GEOLOC mode is the full pipeline: normalize, tag, collect candidates from
every enabled source (proper-noun chunks, suffix patterns, dependency
proximity, noun phrases, hashtag expansions), and verify against the
gazetteer.  UNILOC and BILOC look every unigram (and bigram) up directly,
first stage only, guard off.

All resources are immutable after loading, so one Resources object can be
shared by any number of workers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

from .conllu import ParsedSentence, align_to_tokens, bundled_parses, load_parse_file
from .extract import (
    CandidateMention,
    CandidateSource,
    DependencyGraph,
    EmergencyLexicon,
    GraphSource,
    SuffixLexicon,
    chunk_proper_nouns,
    dedup_candidates,
    default_emergency_lexicon,
    default_suffix_lexicon,
    dependency_candidates,
    normalize_phrase,
    noun_phrase_candidates,
    suffix_pattern_candidates,
)
from .gazetteer import (
    AmbiguityGuard,
    GazetteerIndex,
    LocatedMention,
    default_guard,
    load_bundled_sample,
    load_geonames,
    lookup_exact,
    verify_candidates,
)
from .normalize import RawTweet, Token, TokenKind, normalize_tweet
from .segment import UnigramModel, default_unigram_model, hashtag_expansions, load_unigram_model
from .tagger import PosTag, TagLexicons, default_tag_lexicons, tag_tokens

ALL_SOURCES = frozenset(
    {
        CandidateSource.PROPER_CHUNK,
        CandidateSource.SUFFIX_MATCH,
        CandidateSource.DEP_PROXIMITY,
        CandidateSource.NOUN_PHRASE,
        CandidateSource.HASHTAG_ORIGINAL,
        CandidateSource.HASHTAG_SEGMENT,
    }
)

_UPOS_TO_TAG = {
    "PROPN": PosTag.PROPN,
    "NOUN": PosTag.NOUN,
    "ADJ": PosTag.ADJ,
    "ADP": PosTag.ADP,
}


class Mode(Enum):
    GEOLOC = "GEOLOC"
    UNILOC = "UNILOC"
    BILOC = "BILOC"


@dataclass(frozen=True)
class PipelineConfig:
    theta_jw: float = 0.90
    d_max: int = 3
    guard_enabled: bool = True
    dependency_source: GraphSource = GraphSource.SUPPLIED
    enabled_sources: frozenset[CandidateSource] = ALL_SOURCES
    mode: Mode = Mode.GEOLOC
    use_parse_tags: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.theta_jw <= 1.0:
            raise ValueError("theta_jw must be in (0, 1]")
        if self.d_max < 1:
            raise ValueError("d_max must be >= 1")
        if self.mode is Mode.GEOLOC and not self.enabled_sources:
            raise ValueError("GEOLOC mode needs at least one candidate source")


@dataclass
class Resources:
    """Loaded, immutable inputs shared across all extraction workers."""

    index: GazetteerIndex
    model: UnigramModel
    tag_lexicons: TagLexicons
    suffixes: SuffixLexicon
    emergencies: EmergencyLexicon
    guard: AmbiguityGuard
    parses: dict[str, ParsedSentence] = field(default_factory=dict)

    @classmethod
    def bundled(cls) -> "Resources":
        """Everything from the package fixtures (India sample gazetteer)."""
        return cls(
            index=load_bundled_sample(),
            model=default_unigram_model(),
            tag_lexicons=default_tag_lexicons(),
            suffixes=default_suffix_lexicon(),
            emergencies=default_emergency_lexicon(),
            guard=default_guard(),
            parses=bundled_parses(),
        )

    @classmethod
    def load(
        cls,
        gazetteer_path=None,
        unigram_path=None,
        parse_path=None,
        country_filter: Optional[str] = None,
    ) -> "Resources":
        if gazetteer_path is not None:
            with open(gazetteer_path, encoding="utf-8") as f:
                index = load_geonames(f, country_filter=country_filter)
        else:
            index = load_bundled_sample()
        if unigram_path is not None:
            with open(unigram_path, encoding="utf-8") as f:
                model = load_unigram_model(f)
        else:
            model = default_unigram_model()
        parses = load_parse_file(parse_path) if parse_path is not None else bundled_parses()
        return cls(
            index=index,
            model=model,
            tag_lexicons=default_tag_lexicons(),
            suffixes=default_suffix_lexicon(),
            emergencies=default_emergency_lexicon(),
            guard=default_guard(),
            parses=parses,
        )


@dataclass
class ExtractionResult:
    tweet_id: str
    mentions: list[LocatedMention]
    untagged: bool
    elapsed: float

    def __post_init__(self) -> None:
        if self.untagged != (not self.mentions):
            raise ValueError("untagged flag must mirror an empty mention list")
        if self.elapsed < 0:
            raise ValueError("elapsed must be non-negative")


def extract_locations(
    tweet: RawTweet,
    cfg: PipelineConfig,
    resources: Resources,
    upos: Optional[list[Optional[str]]] = None,
) -> ExtractionResult:
    """Run the configured pipeline over one tweet."""
    if resources.index is None or resources.model is None:
        raise ValueError("resources must hold a gazetteer index and a unigram model")
    if cfg.mode is not Mode.GEOLOC:
        return baseline_extract(tweet, cfg, resources)

    start = time.perf_counter()
    tokens = normalize_tweet(tweet.text)
    graph, parse_upos = _dependency_graph(tweet, cfg, resources, tokens)
    if upos is None and cfg.use_parse_tags:
        upos = parse_upos
    external = _external_tags(tokens, upos) if upos is not None else None
    tagged = tag_tokens(tokens, resources.tag_lexicons, external)

    enabled = cfg.enabled_sources
    candidates: list[CandidateMention] = []
    if CandidateSource.PROPER_CHUNK in enabled:
        candidates.extend(
            chunk_proper_nouns(tagged, resources.suffixes, resources.tag_lexicons, cfg.theta_jw)
        )
    if CandidateSource.SUFFIX_MATCH in enabled:
        candidates.extend(
            suffix_pattern_candidates(tagged, resources.suffixes, resources.emergencies)
        )
    if CandidateSource.DEP_PROXIMITY in enabled:
        candidates.extend(
            dependency_candidates(tagged, graph, resources.emergencies, cfg.d_max)
        )
    if CandidateSource.NOUN_PHRASE in enabled:
        candidates.extend(noun_phrase_candidates(tagged))
    candidates.extend(_hashtag_candidates(tokens, resources.model, enabled))

    guard = replace(resources.guard, enabled=cfg.guard_enabled)
    mentions = verify_candidates(
        resources.index, dedup_candidates(candidates), guard, resources.suffixes.terms
    )
    elapsed = time.perf_counter() - start
    return ExtractionResult(tweet.id, mentions, untagged=not mentions, elapsed=elapsed)


def _dependency_graph(
    tweet: RawTweet,
    cfg: PipelineConfig,
    resources: Resources,
    tokens: list[Token],
) -> tuple[DependencyGraph, Optional[list[Optional[str]]]]:
    if cfg.dependency_source is GraphSource.SUPPLIED:
        sentence = resources.parses.get(tweet.id)
        if sentence is not None:
            aligned = align_to_tokens(sentence, tokens)
            if aligned is not None:
                return aligned
    return DependencyGraph.token_window(len(tokens)), None


def _external_tags(tokens: list[Token], upos: list[Optional[str]]) -> list[PosTag]:
    if len(upos) != len(tokens):
        raise ValueError("per-token tag list must match the token count")
    tags = []
    for tok, pos in zip(tokens, upos):
        if tok.kind is TokenKind.DELIM:
            tags.append(PosTag.DELIM)
        elif pos is None:
            tags.append(PosTag.OTHER)
        else:
            tags.append(_UPOS_TO_TAG.get(pos, PosTag.OTHER))
    return tags


def _hashtag_candidates(
    tokens: list[Token],
    model: UnigramModel,
    enabled: frozenset[CandidateSource],
) -> list[CandidateMention]:
    want_original = CandidateSource.HASHTAG_ORIGINAL in enabled
    want_segments = CandidateSource.HASHTAG_SEGMENT in enabled
    if not (want_original or want_segments):
        return []
    bodies: dict[str, int] = {}
    for i, tok in enumerate(tokens):
        if tok.hashtag_origin is not None and tok.hashtag_origin not in bodies:
            bodies[tok.hashtag_origin] = i
    out = []
    for body, position in bodies.items():
        for rank, phrase in enumerate(hashtag_expansions(model, body)):
            source = CandidateSource.HASHTAG_ORIGINAL if rank == 0 else CandidateSource.HASHTAG_SEGMENT
            if (source is CandidateSource.HASHTAG_ORIGINAL and want_original) or (
                source is CandidateSource.HASHTAG_SEGMENT and want_segments
            ):
                out.append(CandidateMention(phrase, (position, position), {source}))
    return out


def baseline_extract(
    tweet: RawTweet,
    cfg: PipelineConfig,
    resources: Resources,
) -> ExtractionResult:
    """UniLoc/BiLoc: gazetteer-check every unigram (and bigram), stage one
    only, no guard."""
    if cfg.mode not in (Mode.UNILOC, Mode.BILOC):
        raise ValueError(f"baseline_extract expects UNILOC or BILOC, not {cfg.mode}")
    start = time.perf_counter()
    tokens = normalize_tweet(tweet.text)
    words = [(i, t) for i, t in enumerate(tokens) if t.kind is TokenKind.WORD]
    candidates: list[CandidateMention] = []
    for i, (pos, tok) in enumerate(words):
        candidates.append(
            CandidateMention(tok.surface, (pos, pos), {CandidateSource.UNIGRAM})
        )
        if cfg.mode is Mode.BILOC and i + 1 < len(words):
            nxt_pos, nxt = words[i + 1]
            candidates.append(
                CandidateMention(f"{tok.surface} {nxt.surface}", (pos, nxt_pos),
                                 {CandidateSource.BIGRAM})
            )
    by_entry: dict[int, LocatedMention] = {}
    order: list[int] = []
    for cand in dedup_candidates(candidates):
        matches = lookup_exact(resources.index, cand.phrase)
        if not matches:
            continue
        entry, kind = matches[0]
        if entry.geoname_id not in by_entry:
            by_entry[entry.geoname_id] = LocatedMention(
                candidate=cand,
                entry_id=entry.geoname_id,
                matched_text=normalize_phrase(cand.phrase),
                lat=entry.lat,
                lon=entry.lon,
                match_kind=kind,
            )
            order.append(entry.geoname_id)
    mentions = [by_entry[i] for i in order]
    elapsed = time.perf_counter() - start
    return ExtractionResult(tweet.id, mentions, untagged=not mentions, elapsed=elapsed)
