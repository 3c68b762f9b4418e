from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from tweetloc.normalize import (
    RawTweet,
    TokenKind,
    normalize_tweet,
    split_camel_case,
    word_tokens,
)
from tests.conftest import NOW


def surfaces(tokens):
    return [t.surface for t in tokens if t.kind is TokenKind.WORD]


class TestNormalizeTweet:
    def test_paper_style_tweet(self):
        tokens = normalize_tweet("RT @user Floods in #ChennaiFloods http://t.co/x")
        assert surfaces(tokens) == ["Floods", "in", "ChennaiFloods", "Chennai", "Floods"]
        hashtag = [t for t in tokens if t.surface == "ChennaiFloods"][0]
        assert hashtag.hashtag_origin == "ChennaiFloods"
        assert not hashtag.camel_split
        parts = [t for t in tokens if t.camel_split]
        assert [t.surface for t in parts] == ["Chennai", "Floods"]
        assert all(t.hashtag_origin == "ChennaiFloods" for t in parts)

    def test_empty_input(self):
        assert normalize_tweet("") == []

    def test_delimiters_kept(self):
        tokens = normalize_tweet("At Vinayak hospital, Gujranwala town,delhi")
        assert [(t.surface, t.kind.value) for t in tokens] == [
            ("At", "WORD"), ("Vinayak", "WORD"), ("hospital", "WORD"), (",", "DELIM"),
            ("Gujranwala", "WORD"), ("town", "WORD"), (",", "DELIM"), ("delhi", "WORD"),
        ]

    def test_url_removal(self):
        assert surfaces(normalize_tweet("flood https://example.com/a?b=1 relief")) == ["flood", "relief"]
        assert surfaces(normalize_tweet("see t.co/abc now")) == ["see", "now"]

    def test_mention_removal(self):
        assert surfaces(normalize_tweet("thanks @user_1 for help")) == ["thanks", "for", "help"]

    def test_leading_rt_only(self):
        assert surfaces(normalize_tweet("RT @a hello")) == ["hello"]
        # mid-text "RT" is an ordinary word
        assert surfaces(normalize_tweet("the RT was fast")) == ["the", "RT", "was", "fast"]

    def test_brackets_and_ellipses_removed(self):
        tokens = normalize_tweet("help (urgent) [now] {really}... more… soon")
        assert surfaces(tokens) == ["help", "urgent", "now", "really", "more", "soon"]
        assert all(t.kind is TokenKind.WORD for t in tokens)

    def test_single_dot_is_delimiter(self):
        tokens = normalize_tweet("at 8.30 am")
        assert [(t.surface, t.kind.value) for t in tokens] == [
            ("at", "WORD"), ("8", "WORD"), (".", "DELIM"), ("30", "WORD"), ("am", "WORD"),
        ]

    def test_hashtag_underscore_split(self):
        tokens = normalize_tweet("#Nepal_Quake relief")
        assert surfaces(tokens) == ["Nepal", "Quake", "relief"]
        assert tokens[0].hashtag_origin == "Nepal_Quake"

    def test_span_fidelity(self):
        text = "Heavy rains lash Mumbai, trains late at #Ghatkopar today"
        for tok in normalize_tweet(text):
            assert text[tok.span[0] : tok.span[1]] == tok.surface

    def test_case_preserved(self):
        text = "DELHI and delhi and Delhi"
        assert surfaces(normalize_tweet(text)) == ["DELHI", "and", "delhi", "and", "Delhi"]

    def test_spans_ordered_and_disjoint_outside_camel(self):
        text = "Floods in #ChennaiFloods, stay safe"
        plain = [t for t in normalize_tweet(text) if not t.camel_split]
        for a, b in zip(plain, plain[1:]):
            assert a.span[1] <= b.span[0]
        # camel parts nest inside their parent span
        tokens = normalize_tweet(text)
        parent = next(t for t in tokens if t.surface == "ChennaiFloods")
        for part in (t for t in tokens if t.camel_split):
            assert parent.span[0] <= part.span[0] < part.span[1] <= parent.span[1]

    def test_idempotent_on_word_surfaces(self):
        texts = [
            "RT @user Floods in #ChennaiFloods http://t.co/x",
            "At Vinayak hospital, Gujranwala town,delhi",
            "#NepalQuake rescue (ongoing)... near Kathmandu",
        ]
        for text in texts:
            first = set(surfaces(normalize_tweet(text)))
            again = set(surfaces(normalize_tweet(" ".join(sorted(first)))))
            assert again == first

    @given(st.text(max_size=120))
    def test_never_crashes_and_spans_reference_original(self, text):
        for tok in normalize_tweet(text):
            if not tok.camel_split:
                assert text[tok.span[0] : tok.span[1]] == tok.surface
            assert tok.span[0] < tok.span[1]


class TestSplitCamelCase:
    @pytest.mark.parametrize(
        "word,parts",
        [
            ("NepalQuake", ["Nepal", "Quake"]),
            ("delhi", ["delhi"]),
            ("GujaratFloodsNow", ["Gujarat", "Floods", "Now"]),
            ("DELHI", ["DELHI"]),
            ("iPhone", ["i", "Phone"]),  # every lower->upper boundary splits
        ],
    )
    def test_examples(self, word, parts):
        assert split_camel_case(word) == parts

    def test_concatenation_restores_input(self):
        for word in ["ChennaiFloodsToday", "aB", "ab", "A"]:
            assert "".join(split_camel_case(word)) == word

    def test_rejects_whitespace(self):
        with pytest.raises(ValueError):
            split_camel_case("two words")
        with pytest.raises(ValueError):
            split_camel_case("")


class TestRawTweet:
    def test_requires_id(self):
        with pytest.raises(ValueError):
            RawTweet(id="", text="x", created_at=NOW)

    def test_geo_range_checked(self):
        with pytest.raises(ValueError):
            RawTweet(id="a", text="x", created_at=NOW, geo=(91.0, 0.0))
        tweet = RawTweet(id="a", text="x", created_at=NOW, geo=(28.6, 77.2))
        assert tweet.geo == (28.6, 77.2)
