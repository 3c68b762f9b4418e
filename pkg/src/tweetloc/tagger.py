"""Rule-based coarse part-of-speech tagging.

A deterministic, lexicon-driven tagger stands in for a statistical one: it is
dependency-free, orders of magnitude faster, and exactly testable.  Callers
holding better tags (a treebank parse, a pre-tagged feed) pass them through
``external_tags`` and the rules are bypassed entirely.

Rules, in order of precedence:

T1  delimiter tokens tag DELIM
T2  known prepositions tag ADP
T3  capitalized words tag PROPN, unless sentence-initial and stoplisted or a
    known common noun (suppresses "The", "Will", ... at tweet starts)
T4  known adjectives, or -ern/-ful/-ous/-ish/-al endings not in the
    common-noun list, tag ADJ
T5  known common nouns tag NOUN
T6  any other all-lowercase alphabetic word tags NOUN (lowercase tweets would
    otherwise starve the downstream suffix matcher)
T7  everything else tags OTHER
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional, Sequence, Union

from .normalize import Token, TokenKind


class PosTag(Enum):
    PROPN = "PROPN"
    NOUN = "NOUN"
    ADJ = "ADJ"
    ADP = "ADP"
    DELIM = "DELIM"
    OTHER = "OTHER"


# Prepositions that typically introduce a place; used as a chunking cue.
LOCATION_PREPOSITIONS = frozenset(
    {"at", "in", "from", "to", "near", "around", "beside", "outside", "inside"}
)

_ADJ_ENDINGS = ("ern", "ful", "ous", "ish", "al")


@dataclass(frozen=True)
class TagLexicons:
    prepositions: frozenset[str]
    location_prepositions: frozenset[str]
    adjectives: frozenset[str]
    common_nouns: frozenset[str]
    stoplist: frozenset[str]

    def __post_init__(self) -> None:
        if not self.location_prepositions <= self.prepositions:
            raise ValueError("location_prepositions must be a subset of prepositions")


def load_word_list(lines: Union[Iterable[str], str]) -> frozenset[str]:
    """One word per line, lowercased; blank lines and '#' comments skipped."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    words = set()
    for line in lines:
        word = line.split("#", 1)[0].strip().lower()
        if word:
            words.add(word)
    return frozenset(words)


def _bundled_list(name: str) -> frozenset[str]:
    ref = resources.files("tweetloc.data").joinpath(name)
    return load_word_list(ref.read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def default_tag_lexicons() -> TagLexicons:
    return TagLexicons(
        prepositions=_bundled_list("prepositions.txt"),
        location_prepositions=LOCATION_PREPOSITIONS,
        adjectives=_bundled_list("adjectives.txt"),
        common_nouns=_bundled_list("common_nouns.txt"),
        stoplist=_bundled_list("stopwords.txt"),
    )


def tag_tokens(
    tokens: Sequence[Token],
    lexicons: TagLexicons,
    external_tags: Optional[Sequence[PosTag]] = None,
) -> list[tuple[Token, PosTag]]:
    """Tag every token exactly once.

    With ``external_tags`` the supplied tags are returned verbatim (the
    pluggable-tagger contract); a length mismatch is a contract error.
    """
    if external_tags is not None:
        if len(external_tags) != len(tokens):
            raise ValueError(
                f"external_tags length {len(external_tags)} != token count {len(tokens)}"
            )
        return list(zip(tokens, external_tags))

    sentence_initial = _sentence_initial_indices(tokens)
    tagged = []
    for i, tok in enumerate(tokens):
        tagged.append((tok, _tag_one(tok, i in sentence_initial, lexicons)))
    return tagged


def _sentence_initial_indices(tokens: Sequence[Token]) -> set[int]:
    # first WORD of the tweet, plus any WORD right after a "." delimiter
    initial = set()
    seen_word = False
    for i, tok in enumerate(tokens):
        if tok.kind is not TokenKind.WORD:
            continue
        if not seen_word:
            initial.add(i)
            seen_word = True
        elif i > 0 and tokens[i - 1].kind is TokenKind.DELIM and tokens[i - 1].surface == ".":
            initial.add(i)
    return initial


def _tag_one(tok: Token, sentence_initial: bool, lex: TagLexicons) -> PosTag:
    if tok.kind is TokenKind.DELIM:
        return PosTag.DELIM
    lower = tok.surface.lower()
    if lower in lex.prepositions:
        return PosTag.ADP
    if tok.surface[:1].isupper():
        if not sentence_initial or (lower not in lex.common_nouns and lower not in lex.stoplist):
            return PosTag.PROPN
    if lower in lex.adjectives:
        return PosTag.ADJ
    if lower.endswith(_ADJ_ENDINGS) and lower not in lex.common_nouns:
        return PosTag.ADJ
    if lower in lex.common_nouns:
        return PosTag.NOUN
    if tok.surface.isalpha() and tok.surface.islower():
        return PosTag.NOUN
    return PosTag.OTHER
