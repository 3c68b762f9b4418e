"""Tweet-record wire formats shared by the CLI, service, and evaluation kit.

A tweet record is a JSON object with fields id, text, created_at (RFC 3339),
optional geo {lat, lon}, and optionally upos (treebank tags aligned to the
normalized WORD tokens, for pre-tagged ingestion).  Batches arrive either as
a JSON array or as line-delimited JSON.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from typing import Any, Optional

from .gazetteer import LocatedMention, MatchKind
from .extract import CandidateMention, CandidateSource, Cue
from .normalize import RawTweet


def parse_rfc3339(value: str) -> datetime:
    """RFC 3339 timestamp to an aware UTC datetime (naive input assumed UTC)."""
    if not isinstance(value, str) or not value:
        raise ValueError(f"bad timestamp: {value!r}")
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError:
        raise ValueError(f"bad timestamp: {value!r}") from None
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def format_rfc3339(value: datetime) -> str:
    return value.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def tweet_from_obj(obj: Any) -> tuple[RawTweet, Optional[list[Optional[str]]]]:
    """Build a RawTweet from a decoded record; raises ValueError when malformed."""
    if not isinstance(obj, dict):
        raise ValueError("tweet record must be an object")
    try:
        tweet_id = str(obj["id"])
        text = obj["text"]
        created_at = parse_rfc3339(obj["created_at"])
    except KeyError as exc:
        raise ValueError(f"tweet record missing field {exc}") from None
    if not isinstance(text, str):
        raise ValueError("tweet text must be a string")
    geo = None
    if obj.get("geo") is not None:
        raw_geo = obj["geo"]
        try:
            geo = (float(raw_geo["lat"]), float(raw_geo["lon"]))
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"bad geo field: {raw_geo!r}") from None
    upos = obj.get("upos")
    if upos is not None and (
        not isinstance(upos, list) or not all(isinstance(u, (str, type(None))) for u in upos)
    ):
        raise ValueError("upos must be a list of tag strings")
    tweet = RawTweet(
        id=tweet_id,
        text=text,
        created_at=created_at,
        geo=geo,
        source_meta=obj.get("source_meta"),
    )
    return tweet, upos


def tweet_to_obj(tweet: RawTweet) -> dict:
    obj: dict[str, Any] = {
        "id": tweet.id,
        "text": tweet.text,
        "created_at": format_rfc3339(tweet.created_at),
    }
    if tweet.geo is not None:
        obj["geo"] = {"lat": tweet.geo[0], "lon": tweet.geo[1]}
    if tweet.source_meta is not None:
        obj["source_meta"] = tweet.source_meta
    return obj


def parse_batch(body: str) -> tuple[list[Any], int]:
    """Decode a record batch (JSON array or JSONL).

    Returns the decoded objects plus a count of undecodable lines.
    """
    stripped = body.strip()
    if not stripped:
        return [], 0
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError:
            return [], 1
        return (data, 0) if isinstance(data, list) else ([data], 0)
    objs = []
    bad = 0
    for line in stripped.splitlines():
        if not line.strip():
            continue
        try:
            objs.append(json.loads(line))
        except json.JSONDecodeError:
            bad += 1
    return objs, bad


def mention_to_obj(mention: LocatedMention) -> dict:
    cand = mention.candidate
    return {
        "phrase": cand.phrase,
        "token_span": list(cand.token_span),
        "sources": sorted(s.value for s in cand.sources),
        "cues": sorted(c.value for c in cand.cues),
        "fuzzy_suffix_score": cand.fuzzy_suffix_score,
        "entry_id": mention.entry_id,
        "matched_text": mention.matched_text,
        "lat": mention.lat,
        "lon": mention.lon,
        "match_kind": mention.match_kind.value,
    }


def mention_from_obj(obj: dict) -> LocatedMention:
    cand = CandidateMention(
        phrase=obj["phrase"],
        token_span=tuple(obj["token_span"]),
        sources={CandidateSource(s) for s in obj["sources"]},
        cues={Cue(c) for c in obj["cues"]},
        fuzzy_suffix_score=obj.get("fuzzy_suffix_score"),
    )
    return LocatedMention(
        candidate=cand,
        entry_id=obj["entry_id"],
        matched_text=obj["matched_text"],
        lat=obj["lat"],
        lon=obj["lon"],
        match_kind=MatchKind(obj["match_kind"]),
    )
