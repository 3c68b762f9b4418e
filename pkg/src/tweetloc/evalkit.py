"""Precision / recall / F-score evaluation over an annotated corpus.

Counts pool across all tweets (micro-averaging): precision is matched over
retrieved, recall is matched over correct, and F is their harmonic mean.  A
retrieved mention matches a gold name when their normalized forms are equal,
or (under the default rule) when the gold name equals the resolved entry's
name, ASCII name, or any alternate name — annotators write "Bengaluru" where
tweets say "Bangalore".
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence, Union

from .gazetteer import GazetteerIndex, LocatedMention
from .extract import normalize_phrase
from .normalize import RawTweet
from .pipeline import ExtractionResult
from .records import parse_rfc3339

logger = logging.getLogger(__name__)

Extractor = Callable[[RawTweet], ExtractionResult]


class MatchRule(Enum):
    EXACT = "EXACT"            # normalized-string equality only
    ALTERNATES = "ALTERNATES"  # also match the entry's names and aliases


@dataclass(frozen=True)
class GoldRecord:
    tweet: RawTweet
    gold_locations: frozenset[str]

    def __post_init__(self) -> None:
        if any(not g.strip() for g in self.gold_locations):
            raise ValueError("gold location names must be non-empty")


@dataclass
class EvalReport:
    precision: float
    recall: float
    f_score: float
    per_tweet: list[tuple[str, frozenset[str], frozenset[str], frozenset[str]]]
    total_elapsed: float
    tweets_evaluated: int
    errors: int = 0


def load_gold_corpus(lines: Union[Iterable[str], str]) -> list[GoldRecord]:
    """JSONL records with fields id, text, created_at and gold (a name list)."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    records = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            tweet = RawTweet(
                id=str(obj["id"]),
                text=obj["text"],
                created_at=parse_rfc3339(obj["created_at"]),
            )
            gold = frozenset(obj.get("gold", []))
        except (KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"gold corpus line {lineno}: {exc}") from None
        records.append(GoldRecord(tweet=tweet, gold_locations=gold))
    return records


def _mention_keys(
    mention: LocatedMention,
    rule: MatchRule,
    index: Optional[GazetteerIndex],
) -> set[str]:
    keys = {normalize_phrase(mention.phrase), normalize_phrase(mention.matched_text)}
    if rule is MatchRule.ALTERNATES and index is not None:
        entry = index.entries.get(mention.entry_id)
        if entry is not None:
            keys.add(normalize_phrase(entry.name))
            keys.add(normalize_phrase(entry.ascii_name))
            keys.update(normalize_phrase(a) for a in entry.alternate_names)
    keys.discard("")
    return keys


def evaluate(
    corpus: Sequence[GoldRecord],
    extractor: Extractor,
    matching: MatchRule = MatchRule.ALTERNATES,
    index: Optional[GazetteerIndex] = None,
) -> EvalReport:
    """Micro-averaged P/R/F of ``extractor`` over ``corpus``.

    An extractor failure on one tweet counts that tweet with an empty
    retrieved set; the run never aborts mid-corpus.
    """
    if not corpus:
        raise ValueError("evaluation corpus must be non-empty")
    sum_retrieved = sum_correct = sum_matched = 0
    per_tweet = []
    total_elapsed = 0.0
    errors = 0
    for record in corpus:
        gold = frozenset(normalize_phrase(g) for g in record.gold_locations)
        try:
            result = extractor(record.tweet)
            mentions = result.mentions
            total_elapsed += result.elapsed
        except Exception:
            logger.exception("extractor failed on tweet %s", record.tweet.id)
            errors += 1
            mentions = []
        # canonicalize each retrieved mention to the gold name it matches
        retrieved = set()
        for mention in mentions:
            keys = _mention_keys(mention, matching, index)
            matched_gold = next((g for g in sorted(gold) if g in keys), None)
            retrieved.add(matched_gold if matched_gold else normalize_phrase(mention.phrase))
        matched = retrieved & gold
        sum_retrieved += len(retrieved)
        sum_correct += len(gold)
        sum_matched += len(matched)
        per_tweet.append(
            (record.tweet.id, frozenset(retrieved), gold, frozenset(matched))
        )
    precision = sum_matched / sum_retrieved if sum_retrieved else 0.0
    recall = sum_matched / sum_correct if sum_correct else 0.0
    f_score = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return EvalReport(
        precision=precision,
        recall=recall,
        f_score=f_score,
        per_tweet=per_tweet,
        total_elapsed=total_elapsed,
        tweets_evaluated=len(corpus),
        errors=errors,
    )


def time_extractor(
    corpus: Sequence[RawTweet],
    extractor: Extractor,
    repeats: int = 1,
) -> tuple[float, float]:
    """(mean seconds per tweet, best-of-``repeats`` total seconds), resources
    assumed warm."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    if not corpus:
        return 0.0, 0.0
    totals = []
    for _ in range(repeats):
        start = time.perf_counter()
        for tweet in corpus:
            extractor(tweet)
        totals.append(time.perf_counter() - start)
    best = min(totals)
    return best / len(corpus), best
