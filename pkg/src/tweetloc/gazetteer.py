"""GeoNames ingestion, name indexing, and candidate verification.

The index maps every normalized name, ASCII name, and alternate name to its
entries.  Lookup is staged: the full phrase first, then the phrase minus a
trailing suffix term ("Gujranwala town" -> "Gujranwala"), then the longest
sub-n-gram.  Within a stage, entries order by population descending and then
geoname id ascending, so homonymous places resolve deterministically.

Verification applies an ambiguity guard: a bare lowercase common word ("song",
"monsoon") is refused a gazetteer hit unless some cue or dependency evidence
backs it.  The guard is switchable to reproduce unguarded behavior.
"""

from __future__ import annotations

import logging
import pickle
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional, TextIO, Union

from .extract import (
    CandidateMention,
    CandidateSource,
    default_suffix_lexicon,
    normalize_phrase,
)

logger = logging.getLogger(__name__)

GEONAMES_FIELD_COUNT = 19

_SNAPSHOT_MAGIC = b"tweetloc-gazetteer-snapshot v1\n"


class MatchKind(Enum):
    # declaration order is preference order when one entry matches several ways
    EXACT_NAME = "EXACT_NAME"
    ALTERNATE_NAME = "ALTERNATE_NAME"
    SUFFIX_DROPPED = "SUFFIX_DROPPED"
    SUB_NGRAM = "SUB_NGRAM"


_KIND_RANK = {kind: i for i, kind in enumerate(MatchKind)}


@dataclass(frozen=True, slots=True)
class GazetteerEntry:
    geoname_id: int
    name: str
    ascii_name: str
    alternate_names: tuple[str, ...]
    lat: float
    lon: float
    feature_class: str
    feature_code: str
    country_code: str
    admin1: str
    population: int


@dataclass
class GazetteerIndex:
    entries: dict[int, GazetteerEntry]
    name_index: dict[str, tuple[int, ...]]
    entry_count: int
    max_ngram: int
    skipped: int = 0


def load_geonames(
    stream: Union[TextIO, Iterable[str]],
    country_filter: Optional[str] = None,
    bounding_box: Optional[tuple[float, float, float, float]] = None,
) -> GazetteerIndex:
    """Index a GeoNames dump (19 tab-separated columns per row).

    A wrong column count raises with the line number; rows with unparseable
    or out-of-range coordinates are skipped and counted.  ``bounding_box`` is
    (lat_min, lat_max, lon_min, lon_max), inclusive.
    """
    entries: dict[int, GazetteerEntry] = {}
    raw_index: dict[str, set[int]] = {}
    skipped = 0
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\n")
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != GEONAMES_FIELD_COUNT:
            raise ValueError(
                f"geonames line {lineno}: expected {GEONAMES_FIELD_COUNT} fields, got {len(cols)}"
            )
        if country_filter and cols[8] != country_filter:
            continue
        try:
            lat, lon = float(cols[4]), float(cols[5])
        except ValueError:
            skipped += 1
            logger.warning("geonames line %d: unparseable coordinates, row skipped", lineno)
            continue
        if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
            skipped += 1
            logger.warning("geonames line %d: coordinates out of range, row skipped", lineno)
            continue
        if bounding_box is not None:
            lat_min, lat_max, lon_min, lon_max = bounding_box
            if not (lat_min <= lat <= lat_max and lon_min <= lon <= lon_max):
                continue
        try:
            geoname_id = int(cols[0])
        except ValueError:
            skipped += 1
            logger.warning("geonames line %d: bad geoname id, row skipped", lineno)
            continue
        try:
            population = int(cols[14]) if cols[14] else 0
        except ValueError:
            population = 0
        entry = GazetteerEntry(
            geoname_id=geoname_id,
            name=cols[1],
            ascii_name=cols[2],
            alternate_names=tuple(a for a in cols[3].split(",") if a),
            lat=lat,
            lon=lon,
            feature_class=cols[6],
            feature_code=cols[7],
            country_code=cols[8],
            admin1=cols[10],
            population=max(population, 0),
        )
        entries[geoname_id] = entry
        for name in (entry.name, entry.ascii_name, *entry.alternate_names):
            key = normalize_phrase(name)
            if key:
                raw_index.setdefault(key, set()).add(geoname_id)

    name_index = {
        key: tuple(sorted(ids, key=lambda i: (-entries[i].population, i)))
        for key, ids in raw_index.items()
    }
    max_ngram = max((key.count(" ") + 1 for key in name_index), default=0)
    return GazetteerIndex(
        entries=entries,
        name_index=name_index,
        entry_count=len(entries),
        max_ngram=max_ngram,
        skipped=skipped,
    )


@lru_cache(maxsize=1)
def load_bundled_sample() -> GazetteerIndex:
    """The bundled India slice used by tests and demos."""
    ref = resources.files("tweetloc.data").joinpath("geonames_in_sample.tsv")
    with ref.open("r", encoding="utf-8") as f:
        return load_geonames(f, country_filter="IN")


def save_index(index: GazetteerIndex, path) -> None:
    """Write a versioned snapshot so a large dump need not be re-parsed."""
    with open(path, "wb") as f:
        f.write(_SNAPSHOT_MAGIC)
        pickle.dump(index, f, protocol=pickle.HIGHEST_PROTOCOL)


def load_index(path) -> GazetteerIndex:
    with open(path, "rb") as f:
        magic = f.read(len(_SNAPSHOT_MAGIC))
        if magic != _SNAPSHOT_MAGIC:
            raise ValueError(f"{path}: not a gazetteer snapshot (bad header)")
        return pickle.load(f)


def _match_kind(index: GazetteerIndex, key: str, geoname_id: int) -> MatchKind:
    entry = index.entries[geoname_id]
    if key in (normalize_phrase(entry.name), normalize_phrase(entry.ascii_name)):
        return MatchKind.EXACT_NAME
    return MatchKind.ALTERNATE_NAME


def _staged_lookup(
    index: GazetteerIndex,
    phrase: str,
    suffix_terms: frozenset[str],
) -> Optional[tuple[str, list[tuple[GazetteerEntry, MatchKind]]]]:
    """Returns (matched text, hits) from the first non-empty stage."""
    key = normalize_phrase(phrase)
    if not key:
        return None
    ids = index.name_index.get(key)
    if ids:
        return key, [(index.entries[i], _match_kind(index, key, i)) for i in ids]

    words = key.split(" ")
    if len(words) >= 2 and words[-1] in suffix_terms:
        base = " ".join(words[:-1])
        ids = index.name_index.get(base)
        if ids:
            return base, [(index.entries[i], MatchKind.SUFFIX_DROPPED) for i in ids]

    top = min(len(words) - 1, index.max_ngram)
    for size in range(top, 0, -1):
        for start in range(0, len(words) - size + 1):
            sub = " ".join(words[start : start + size])
            ids = index.name_index.get(sub)
            if ids:
                return sub, [(index.entries[i], MatchKind.SUB_NGRAM) for i in ids]
    return None


def lookup(
    index: GazetteerIndex,
    phrase: str,
    suffix_terms: Optional[frozenset[str]] = None,
) -> list[tuple[GazetteerEntry, MatchKind]]:
    """Staged phrase lookup; empty list when nothing matches at any stage."""
    if suffix_terms is None:
        suffix_terms = default_suffix_lexicon().terms
    hit = _staged_lookup(index, phrase, suffix_terms)
    return hit[1] if hit else []


def lookup_exact(index: GazetteerIndex, phrase: str) -> list[tuple[GazetteerEntry, MatchKind]]:
    """First-stage-only lookup (the UniLoc/BiLoc baselines use this)."""
    key = normalize_phrase(phrase)
    ids = index.name_index.get(key) if key else None
    if not ids:
        return []
    return [(index.entries[i], _match_kind(index, key, i)) for i in ids]


@dataclass(frozen=True)
class AmbiguityGuard:
    """Rejects bare lowercase common words lacking supporting evidence."""

    enabled: bool = True
    common_words: frozenset[str] = field(default_factory=frozenset)


@lru_cache(maxsize=1)
def default_guard() -> AmbiguityGuard:
    from .tagger import default_tag_lexicons

    return AmbiguityGuard(enabled=True, common_words=default_tag_lexicons().stoplist)


def _guard_rejects(guard: AmbiguityGuard, cand: CandidateMention, matched_text: str) -> bool:
    if not guard.enabled:
        return False
    if cand.cues or CandidateSource.DEP_PROXIMITY in cand.sources:
        return False
    if " " in matched_text or matched_text not in guard.common_words:
        return False
    # the matched word must have been all-lowercase in the source phrase
    for word in cand.phrase.split():
        if word.lower() == matched_text:
            return word.islower()
    return False


@dataclass(frozen=True)
class LocatedMention:
    """A candidate verified against the gazetteer, with coordinates."""

    candidate: CandidateMention
    entry_id: int
    matched_text: str
    lat: float
    lon: float
    match_kind: MatchKind

    @property
    def phrase(self) -> str:
        return self.candidate.phrase


def verify_candidates(
    index: GazetteerIndex,
    candidates: Iterable[CandidateMention],
    guard: Optional[AmbiguityGuard] = None,
    suffix_terms: Optional[frozenset[str]] = None,
) -> list[LocatedMention]:
    """Resolve candidates to gazetteer entries, deduplicated by entry.

    When several candidates hit the same entry, the mention with the most
    direct match kind (and then the shortest phrase) wins, and the sources
    and cues of the others merge into it.
    """
    if guard is None:
        guard = default_guard()
    if suffix_terms is None:
        suffix_terms = default_suffix_lexicon().terms
    by_entry: dict[int, LocatedMention] = {}
    order: list[int] = []
    for cand in candidates:
        hit = _staged_lookup(index, cand.phrase, suffix_terms)
        if hit is None:
            continue
        matched_text, matches = hit
        if _guard_rejects(guard, cand, matched_text):
            continue
        entry, kind = matches[0]
        mention = LocatedMention(
            candidate=replace(cand, sources=set(cand.sources), cues=set(cand.cues)),
            entry_id=entry.geoname_id,
            matched_text=matched_text,
            lat=entry.lat,
            lon=entry.lon,
            match_kind=kind,
        )
        kept = by_entry.get(entry.geoname_id)
        if kept is None:
            by_entry[entry.geoname_id] = mention
            order.append(entry.geoname_id)
        else:
            better = (_KIND_RANK[kind], len(mention.phrase)) < \
                (_KIND_RANK[kept.match_kind], len(kept.phrase))
            winner, loser = (mention, kept) if better else (kept, mention)
            winner.candidate.sources |= loser.candidate.sources
            winner.candidate.cues |= loser.candidate.cues
            by_entry[entry.geoname_id] = winner
    return [by_entry[i] for i in order]
