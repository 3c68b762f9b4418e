"""Tweet store and query API behind the monitoring dashboard.

Persistence is an append-only line-oriented log of processed records; the
in-memory snapshot (records plus day counters) rebuilds from the log on
startup, so replaying a log reproduces byte-identical query answers.  One
writer ingests; readers work off immutable snapshots and never observe a
half-applied batch.

HTTP surface (all JSON):

    POST /ingest     record batch (JSON array or JSONL)
    GET  /tweets     GeoJSON FeatureCollection of located mentions
    GET  /untagged   paged records with no inferred location
    GET  /histogram  per-day tagged counts
    GET  /health     {generation, record_count, status}

Filters: ``q`` is a comma-separated term list matched case-insensitively
against the tweet text (OR semantics); ``from``/``to`` bound the calendar day.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass, field
from datetime import date, timezone
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any, Optional
from urllib.parse import parse_qs, urlparse

from .normalize import TokenKind, normalize_tweet, text_key
from .pipeline import ExtractionResult, PipelineConfig, Resources, extract_locations
from .records import (
    format_rfc3339,
    mention_from_obj,
    mention_to_obj,
    parse_batch,
    parse_rfc3339,
    tweet_from_obj,
    tweet_to_obj,
)

logger = logging.getLogger(__name__)

UNTAGGED_PAGE_SIZE = 50


@dataclass(frozen=True)
class TweetRecord:
    tweet: Any  # RawTweet
    result: ExtractionResult
    day_key: date
    hour: int
    matched_terms: frozenset[str]


@dataclass(frozen=True)
class StoreSnapshot:
    records: tuple[TweetRecord, ...]
    by_day: dict[date, tuple[int, int]]  # day -> (tagged, untagged)
    generation: int
    ids: frozenset[str]
    text_keys: frozenset[str]

    @property
    def record_count(self) -> int:
        return len(self.records)


@dataclass
class IngestReport:
    accepted: int
    duplicates: int
    errors: int


def _record_to_line(record: TweetRecord) -> str:
    obj = {
        "tweet": tweet_to_obj(record.tweet),
        "result": {
            "tweet_id": record.result.tweet_id,
            "untagged": record.result.untagged,
            "elapsed": record.result.elapsed,
            "mentions": [mention_to_obj(m) for m in record.result.mentions],
        },
        "day_key": record.day_key.isoformat(),
        "hour": record.hour,
        "matched_terms": sorted(record.matched_terms),
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _record_from_line(line: str) -> TweetRecord:
    obj = json.loads(line)
    tweet, _ = tweet_from_obj(obj["tweet"])
    raw = obj["result"]
    result = ExtractionResult(
        tweet_id=raw["tweet_id"],
        mentions=[mention_from_obj(m) for m in raw["mentions"]],
        untagged=raw["untagged"],
        elapsed=raw["elapsed"],
    )
    return TweetRecord(
        tweet=tweet,
        result=result,
        day_key=date.fromisoformat(obj["day_key"]),
        hour=obj["hour"],
        matched_terms=frozenset(obj["matched_terms"]),
    )


class TweetStore:
    """Single-writer, many-reader store over an append-only log file."""

    def __init__(
        self,
        path,
        cfg: Optional[PipelineConfig] = None,
        resources: Optional[Resources] = None,
        english_fraction: Optional[float] = None,
    ) -> None:
        self.path = path
        self.cfg = cfg or PipelineConfig()
        self.resources = resources or Resources.bundled()
        self.english_fraction = english_fraction
        self._write_lock = threading.Lock()
        records = []
        try:
            with open(path, encoding="utf-8") as f:
                for line in f:
                    if line.strip():
                        records.append(_record_from_line(line))
        except FileNotFoundError:
            pass
        self._snapshot = _build_snapshot(records, generation=len(records))

    @property
    def snapshot(self) -> StoreSnapshot:
        return self._snapshot

    def ingest(self, batch: list[Any]) -> IngestReport:
        """Process a record batch; the snapshot swaps atomically at the end,
        so readers see the whole batch or none of it."""
        with self._write_lock:
            snap = self._snapshot
            seen_ids = set(snap.ids)
            seen_texts = set(snap.text_keys)
            accepted: list[TweetRecord] = []
            duplicates = errors = 0
            for obj in batch:
                try:
                    tweet, upos = tweet_from_obj(obj)
                except ValueError as exc:
                    logger.warning("malformed record skipped: %s", exc)
                    errors += 1
                    continue
                key = text_key(tweet.text)
                if tweet.id in seen_ids or (key and key in seen_texts):
                    duplicates += 1
                    continue
                if self.english_fraction is not None and not self._looks_english(tweet.text):
                    errors += 1
                    continue
                result = extract_locations(tweet, self.cfg, self.resources, upos=upos)
                created = tweet.created_at.astimezone(timezone.utc)
                accepted.append(
                    TweetRecord(
                        tweet=tweet,
                        result=result,
                        day_key=created.date(),
                        hour=created.hour,
                        matched_terms=self._matched_terms(tweet.text),
                    )
                )
                seen_ids.add(tweet.id)
                if key:
                    seen_texts.add(key)
            if accepted:
                with open(self.path, "a", encoding="utf-8") as f:
                    for record in accepted:
                        f.write(_record_to_line(record) + "\n")
                    f.flush()
            self._snapshot = _build_snapshot(
                list(snap.records) + accepted, generation=snap.generation + 1
            )
            return IngestReport(accepted=len(accepted), duplicates=duplicates, errors=errors)

    def _matched_terms(self, text: str) -> frozenset[str]:
        terms = set()
        for tok in normalize_tweet(text):
            if tok.kind is TokenKind.WORD and self.resources.emergencies.matches(tok.surface):
                terms.add(tok.surface.lower())
        return frozenset(terms)

    def _looks_english(self, text: str) -> bool:
        words = [t.surface.lower() for t in normalize_tweet(text) if t.kind is TokenKind.WORD]
        if not words:
            return False
        vocab = self.resources.tag_lexicons.stoplist
        model = self.resources.model.counts
        known = sum(1 for w in words if w in vocab or w in model)
        return known / len(words) >= self.english_fraction


def _build_snapshot(records: list[TweetRecord], generation: int) -> StoreSnapshot:
    by_day: dict[date, tuple[int, int]] = {}
    for record in records:
        tagged, untagged = by_day.get(record.day_key, (0, 0))
        if record.result.untagged:
            by_day[record.day_key] = (tagged, untagged + 1)
        else:
            by_day[record.day_key] = (tagged + 1, untagged)
    return StoreSnapshot(
        records=tuple(records),
        by_day=by_day,
        generation=generation,
        ids=frozenset(r.tweet.id for r in records),
        text_keys=frozenset(k for k in (text_key(r.tweet.text) for r in records) if k),
    )


# ── queries ────────────────────────────────────────────────────────────────


def _parse_terms(q: Optional[str]) -> list[str]:
    if not q:
        return []
    return [t.strip().lower() for t in q.split(",") if t.strip()]


def _passes(record: TweetRecord, terms: list[str],
            date_from: Optional[date], date_to: Optional[date]) -> bool:
    if date_from is not None and record.day_key < date_from:
        return False
    if date_to is not None and record.day_key > date_to:
        return False
    if terms:
        text = record.tweet.text.lower()
        if not any(term in text for term in terms):
            return False
    return True


def _check_range(date_from: Optional[date], date_to: Optional[date]) -> None:
    if date_from is not None and date_to is not None and date_from > date_to:
        raise ValueError("'from' must not be after 'to'")


def query_tweets(
    snapshot: StoreSnapshot,
    q: Optional[str] = None,
    date_from: Optional[date] = None,
    date_to: Optional[date] = None,
) -> dict:
    """GeoJSON FeatureCollection with one Point feature per located mention."""
    _check_range(date_from, date_to)
    terms = _parse_terms(q)
    features = []
    for record in snapshot.records:
        if record.result.untagged or not _passes(record, terms, date_from, date_to):
            continue
        for mention in record.result.mentions:
            features.append({
                "type": "Feature",
                "geometry": {"type": "Point", "coordinates": [mention.lon, mention.lat]},
                "properties": {
                    "tweet_id": record.tweet.id,
                    "text": record.tweet.text,
                    "created_at": format_rfc3339(record.tweet.created_at),
                    "hour": record.hour,
                    "phrase": mention.phrase,
                    "geoname_id": mention.entry_id,
                },
            })
    return {"type": "FeatureCollection", "features": features}


def query_untagged(
    snapshot: StoreSnapshot,
    q: Optional[str] = None,
    date_from: Optional[date] = None,
    date_to: Optional[date] = None,
    page: int = 0,
    page_size: int = UNTAGGED_PAGE_SIZE,
) -> dict:
    _check_range(date_from, date_to)
    terms = _parse_terms(q)
    rows = [
        {
            "tweet_id": r.tweet.id,
            "text": r.tweet.text,
            "created_at": format_rfc3339(r.tweet.created_at),
            "hour": r.hour,
        }
        for r in snapshot.records
        if r.result.untagged and _passes(r, terms, date_from, date_to)
    ]
    start = page * page_size
    return {
        "page": page,
        "page_size": page_size,
        "total": len(rows),
        "items": rows[start : start + page_size],
    }


def histogram(
    snapshot: StoreSnapshot,
    q: Optional[str] = None,
    date_from: Optional[date] = None,
    date_to: Optional[date] = None,
) -> list[tuple[date, int]]:
    """Per-day tagged counts under the same filters as query_tweets; with both
    bounds given, zero days inside the range are included."""
    _check_range(date_from, date_to)
    terms = _parse_terms(q)
    counts: dict[date, int] = {}
    for record in snapshot.records:
        if record.result.untagged or not _passes(record, terms, date_from, date_to):
            continue
        counts[record.day_key] = counts.get(record.day_key, 0) + 1
    if date_from is not None and date_to is not None:
        day = date_from
        while day <= date_to:
            counts.setdefault(day, 0)
            day = date.fromordinal(day.toordinal() + 1)
    return sorted(counts.items())


# ── HTTP layer ─────────────────────────────────────────────────────────────


def _dump(obj: Any) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")


class _Handler(BaseHTTPRequestHandler):
    server_version = "tweetloc"

    @property
    def store(self) -> TweetStore:
        return self.server.store  # type: ignore[attr-defined]

    def log_message(self, fmt, *args):  # route access logs through logging
        logger.debug("%s " + fmt, self.address_string(), *args)

    def _send(self, code: int, payload: bytes) -> None:
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(payload)

    def _error(self, code: int, message: str) -> None:
        self._send(code, _dump({"error": message}))

    def _query_params(self):
        parsed = urlparse(self.path)
        params = {k: v[0] for k, v in parse_qs(parsed.query).items()}
        q = params.get("q")
        date_from = date.fromisoformat(params["from"]) if params.get("from") else None
        date_to = date.fromisoformat(params["to"]) if params.get("to") else None
        return parsed.path, params, q, date_from, date_to

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self):
        try:
            path, params, q, date_from, date_to = self._query_params()
        except ValueError:
            self._error(400, "bad date parameter (expected YYYY-MM-DD)")
            return
        snapshot = self.store.snapshot
        try:
            if path == "/tweets":
                self._send(200, _dump(query_tweets(snapshot, q, date_from, date_to)))
            elif path == "/untagged":
                page = int(params.get("page", "0") or 0)
                self._send(200, _dump(query_untagged(snapshot, q, date_from, date_to, page)))
            elif path == "/histogram":
                rows = histogram(snapshot, q, date_from, date_to)
                self._send(200, _dump([{"day": d.isoformat(), "count": c} for d, c in rows]))
            elif path == "/health":
                self._send(200, _dump({
                    "generation": snapshot.generation,
                    "record_count": snapshot.record_count,
                    "status": "ok",
                }))
            else:
                self._error(404, f"unknown path {path}")
        except ValueError as exc:
            self._error(400, str(exc))

    def do_POST(self):
        parsed = urlparse(self.path)
        if parsed.path != "/ingest":
            self._error(404, f"unknown path {parsed.path}")
            return
        length = int(self.headers.get("Content-Length", "0") or 0)
        body = self.rfile.read(length).decode("utf-8", errors="replace")
        objs, bad_lines = parse_batch(body)
        report = self.store.ingest(objs)
        self._send(200, _dump({
            "accepted": report.accepted,
            "duplicates": report.duplicates,
            "errors": report.errors + bad_lines,
            "generation": self.store.snapshot.generation,
        }))


class StoreServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, store: TweetStore):
        super().__init__(address, _Handler)
        self.store = store


def run_server(store: TweetStore, host: str = "127.0.0.1", port: int = 8040) -> StoreServer:
    """Bind and return the server; callers drive serve_forever themselves."""
    return StoreServer((host, port), store)
