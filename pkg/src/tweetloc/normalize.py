"""Tweet text normalization.

Turns raw microblog text into a clean token stream while preserving case and
character offsets into the original text:

- URLs (http/https schemes and bare t.co shortlinks) are dropped
- @mentions are dropped
- a leading "RT" marker is dropped
- brackets and ellipsis runs (two or more dots, or the U+2026 character) are
  dropped
- '#' is stripped; the hashtag body survives as a token (plus its CamelCase
  parts), so hashtag-borne names stay recoverable
- CamelCase words are additionally split at lowercase-to-uppercase boundaries
- a small set of punctuation (comma, semicolon, colon, pipe, slash, hyphen,
  period) is kept as delimiter tokens; everything else is discarded

No case folding and no stemming ever happen here: downstream proper-noun and
gazetteer matching need the surface forms intact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Optional

# Punctuation kept as DELIM tokens; chunking downstream splits phrases on these.
DELIMITERS = frozenset({",", ";", ":", "|", "/", "-", "."})

# URL starts removed up to the next whitespace.
_URL_MARKS = ("http://", "https://", "t.co/")

_MENTION_RE = re.compile(r"@\w+")
_HASHTAG_BODY_RE = re.compile(r"[0-9A-Za-z_À-ɏऀ-ॿ]+")


class TokenKind(Enum):
    WORD = "WORD"
    DELIM = "DELIM"


@dataclass(frozen=True, slots=True)
class Token:
    """One normalized text unit, with its span in the original tweet text."""

    surface: str
    span: tuple[int, int]
    kind: TokenKind
    hashtag_origin: Optional[str] = None
    camel_split: bool = False


@dataclass(frozen=True)
class RawTweet:
    """An ingested microblog post."""

    id: str
    text: str
    created_at: datetime
    geo: Optional[tuple[float, float]] = None
    source_meta: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("tweet id must be non-empty")
        if self.geo is not None:
            lat, lon = self.geo
            if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
                raise ValueError(f"geo out of range: {self.geo}")


def split_camel_case(word: str) -> list[str]:
    """Split at every lowercase-to-uppercase boundary.

    The concatenation of the parts always equals the input; single-case words
    come back unchanged.
    """
    if not word or any(ch.isspace() for ch in word):
        raise ValueError("split_camel_case expects a non-empty word without whitespace")
    parts = []
    start = 0
    for i in range(len(word) - 1):
        if word[i].islower() and word[i + 1].isupper():
            parts.append(word[start : i + 1])
            start = i + 1
    parts.append(word[start:])
    return parts


def normalize_tweet(raw_text: str) -> list[Token]:
    """Normalize tweet text into an ordered token list.

    Spans always reference the original text, so every non-camel-split token
    satisfies ``raw_text[start:end] == surface``.
    """
    tokens: list[Token] = []
    first_chunk = True
    for match in re.finditer(r"\S+", raw_text):
        chunk, base = match.group(), match.start()
        if first_chunk and chunk == "RT":
            first_chunk = False
            continue
        first_chunk = False
        # URL: drop from the first scheme/shortlink mark to the chunk end
        cut = min((p for p in (chunk.find(m) for m in _URL_MARKS) if p >= 0), default=-1)
        if cut >= 0:
            chunk = chunk[:cut]
        # mentions: excise @handle occurrences, keep surrounding fragments
        pieces = []
        prev = 0
        for m in _MENTION_RE.finditer(chunk):
            pieces.append((chunk[prev : m.start()], base + prev))
            prev = m.end()
        pieces.append((chunk[prev:], base + prev))
        for text, offset in pieces:
            _scan(text, offset, tokens)
    return tokens


def _scan(text: str, base: int, out: list[Token]) -> None:
    """Character scan of one whitespace-free fragment."""
    i = 0
    n = len(text)
    word_start = -1

    def flush(end: int) -> None:
        nonlocal word_start
        if word_start >= 0:
            _emit_word(text[word_start:end], base + word_start, None, out)
            word_start = -1

    while i < n:
        ch = text[i]
        if ch == "#":
            flush(i)
            body = _HASHTAG_BODY_RE.match(text, i + 1)
            if body:
                _emit_hashtag(body.group(), base + body.start(), out)
                i = body.end()
            else:
                i += 1
            continue
        if ch == "." and i + 1 < n and text[i + 1] == ".":
            # ellipsis run: drop entirely
            flush(i)
            while i < n and text[i] == ".":
                i += 1
            continue
        if ch.isalnum() and ch != "_":
            if word_start < 0:
                word_start = i
            i += 1
            continue
        flush(i)
        if ch in DELIMITERS:
            out.append(Token(ch, (base + i, base + i + 1), TokenKind.DELIM))
        # brackets, '…', '_' and all other punctuation: discarded
        i += 1
    flush(n)


def _emit_word(word: str, start: int, origin: Optional[str], out: list[Token]) -> None:
    """Emit a word token; CamelCase words also emit their split parts."""
    span = (start, start + len(word))
    out.append(Token(word, span, TokenKind.WORD, hashtag_origin=origin))
    parts = split_camel_case(word)
    if len(parts) > 1:
        pos = start
        for part in parts:
            out.append(
                Token(part, (pos, pos + len(part)), TokenKind.WORD,
                      hashtag_origin=origin, camel_split=True)
            )
            pos += len(part)


def _emit_hashtag(body: str, start: int, out: list[Token]) -> None:
    # underscores act as separators inside hashtag bodies
    if "_" in body:
        pos = start
        for part in body.split("_"):
            if part:
                _emit_word(part, pos, body, out)
            pos += len(part) + 1
    else:
        _emit_word(body, start, body, out)


def word_tokens(tokens: list[Token]) -> list[Token]:
    return [t for t in tokens if t.kind is TokenKind.WORD]


def text_key(raw_text: str) -> str:
    """Case-folded join of WORD surfaces; used for duplicate-text detection."""
    return " ".join(t.surface.lower() for t in word_tokens(normalize_tweet(raw_text)))
