"""CoNLL-U ingestion for externally supplied dependency parses.

Sentences are keyed by their ``# sent_id`` comment (matched to tweet ids).
Punctuation rows are dropped, with dependents re-attached through the removed
node, so the remaining rows align one-to-one with the pipeline's WORD tokens.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional, Union

from .extract import DependencyGraph, GraphSource
from .normalize import Token, TokenKind


@dataclass(frozen=True)
class ParsedSentence:
    sent_id: Optional[str]
    forms: tuple[str, ...]
    upos: tuple[str, ...]
    edges: frozenset[tuple[int, int]]  # 0-based over the retained rows


def parse_conllu(lines: Union[Iterable[str], str]) -> list[ParsedSentence]:
    if isinstance(lines, str):
        lines = lines.splitlines()
    sentences = []
    rows: list[tuple[str, str, int]] = []  # (form, upos, head) 1-based heads
    sent_id: Optional[str] = None

    def flush() -> None:
        nonlocal rows, sent_id
        if rows:
            sentences.append(_build(sent_id, rows))
        rows = []
        sent_id = None

    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("sent_id"):
                _, _, value = body.partition("=")
                sent_id = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ValueError(f"conllu line {lineno}: expected 10 columns, got {len(cols)}")
        token_id = cols[0]
        if "-" in token_id or "." in token_id:
            continue  # multiword ranges and empty nodes carry no tree edges
        try:
            head = int(cols[6])
        except ValueError:
            raise ValueError(f"conllu line {lineno}: HEAD {cols[6]!r} is not an integer") from None
        rows.append((cols[1], cols[3], head))
    flush()
    return sentences


def _build(sent_id: Optional[str], rows: list[tuple[str, str, int]]) -> ParsedSentence:
    heads = [h for _, _, h in rows]
    punct = {i for i, (_, upos, _) in enumerate(rows) if upos == "PUNCT"}

    def resolve(head: int) -> int:
        # follow heads (1-based; 0 = root) until a retained node or the root
        seen = set()
        while head != 0 and (head - 1) in punct:
            if head in seen:
                return 0
            seen.add(head)
            head = heads[head - 1]
        return head

    retained = [i for i in range(len(rows)) if i not in punct]
    new_index = {old: new for new, old in enumerate(retained)}
    edges = set()
    for old in retained:
        head = resolve(rows[old][2])
        if head != 0 and (head - 1) in new_index:
            edges.add((new_index[head - 1], new_index[old]))
    return ParsedSentence(
        sent_id=sent_id,
        forms=tuple(rows[i][0] for i in retained),
        upos=tuple(rows[i][1] for i in retained),
        edges=frozenset((min(a, b), max(a, b)) for a, b in edges if a != b),
    )


def load_parse_file(path) -> dict[str, ParsedSentence]:
    with open(path, encoding="utf-8") as f:
        sentences = parse_conllu(f)
    return {s.sent_id: s for s in sentences if s.sent_id}


def bundled_parses() -> dict[str, ParsedSentence]:
    ref = resources.files("tweetloc.data").joinpath("parses.conllu")
    return {
        s.sent_id: s
        for s in parse_conllu(ref.read_text(encoding="utf-8"))
        if s.sent_id
    }


def align_to_tokens(
    sentence: ParsedSentence, tokens: list[Token]
) -> Optional[tuple[DependencyGraph, list[Optional[str]]]]:
    """Map a parse onto a token list by WORD order.

    Returns the graph over all token positions (delimiters stay isolated)
    plus per-token UPOS, or None when the word counts disagree.
    """
    word_positions = [i for i, t in enumerate(tokens) if t.kind is TokenKind.WORD]
    if len(word_positions) != len(sentence.forms):
        return None
    edges = [(word_positions[a], word_positions[b]) for a, b in sentence.edges]
    graph = DependencyGraph.from_edges(len(tokens), edges, GraphSource.SUPPLIED)
    upos: list[Optional[str]] = [None] * len(tokens)
    for k, pos in enumerate(word_positions):
        upos[pos] = sentence.upos[k]
    return graph, upos
