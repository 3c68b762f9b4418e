from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tweetloc.segment import (
    Segmentation,
    UnigramModel,
    default_unigram_model,
    hashtag_expansions,
    load_unigram_model,
    segment_word,
)


# ── independent oracle ──────────────────────────────────────────────────────
# Brute-force enumeration of all 2^(n-1) split patterns, scored straight from
# the contract formula with exact arithmetic.  Kept free of the DP under test.

def oracle_prob(model: UnigramModel, word: str) -> Fraction:
    if word in model.counts:
        return Fraction(model.counts[word], model.total)
    return Fraction(10, model.total * 10 ** len(word))


def oracle_segment(model: UnigramModel, s: str) -> list[str]:
    s = s.lower()
    n = len(s)
    best = None
    for mask in range(2 ** (n - 1)):
        cuts = [i + 1 for i in range(n - 1) if mask >> i & 1]
        bounds = [0, *cuts, n]
        words = tuple(s[a:b] for a, b in zip(bounds, bounds[1:]))
        if any(len(w) > model.max_word_len for w in words):
            continue
        score = Fraction(1)
        for w in words:
            score *= oracle_prob(model, w)
        key = (score, -len(words), words)
        if best is None or (score, -len(words)) > (best[0], best[1]) or (
            score == best[0] and len(words) == -best[1] and words < best[2]
        ):
            best = key
    assert best is not None
    return list(best[2])


class TestLoadModel:
    def test_basic_load(self):
        model = load_unigram_model(["nepal\t100", "quake\t50"])
        assert model.total == 150
        assert model.counts == {"nepal": 100, "quake": 50}

    def test_case_fold_merge(self):
        model = load_unigram_model(["The\t5", "the\t5"])
        assert model.counts["the"] == 10

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError, match="line 1"):
            load_unigram_model(["abc\t-1"])

    def test_malformed_line_names_line_number(self):
        with pytest.raises(ValueError, match="line 2"):
            load_unigram_model(["ok\t3", "broken line"])
        with pytest.raises(ValueError, match="line 1"):
            load_unigram_model(["word\tnotanumber"])

    def test_empty_stream_rejected(self):
        with pytest.raises(ValueError):
            load_unigram_model([])
        with pytest.raises(ValueError):
            load_unigram_model(["", "   "])

    def test_blank_lines_skipped(self):
        model = load_unigram_model(["a\t1", "", "b\t2"])
        assert model.total == 3


class TestSegmentWord:
    def test_nepalquake(self, tiny_model):
        assert segment_word(tiny_model, "nepalquake").words == ["nepal", "quake"]
        # exhaustive check over all 2^9 split patterns of the same string
        assert oracle_segment(tiny_model, "nepalquake") == ["nepal", "quake"]

    def test_single_known_word_stays_whole(self):
        model = default_unigram_model()
        assert "kerala" in model.counts
        assert segment_word(model, "kerala").words == ["kerala"]

    def test_bengaluru_splits_into_places(self):
        # the bundled model reproduces the over-segmentation hazard:
        # bengal + uru are both in vocabulary while the city name is not
        model = default_unigram_model()
        assert "bengaluru" not in model.counts
        assert segment_word(model, "bengaluru").words == ["bengal", "uru"]

    def test_case_insensitive(self, tiny_model):
        assert segment_word(tiny_model, "NepalQuake").words == ["nepal", "quake"]

    def test_rejects_empty_and_whitespace(self, tiny_model):
        with pytest.raises(ValueError):
            segment_word(tiny_model, "")
        with pytest.raises(ValueError):
            segment_word(tiny_model, "a b")

    def test_log_score_matches_word_sum(self, tiny_model):
        seg = segment_word(tiny_model, "nepalquake")
        expected = sum(tiny_model.log_prob(w) for w in seg.words)
        assert seg.log_score == pytest.approx(expected, abs=1e-12)

    def test_deterministic(self, tiny_model):
        runs = {tuple(segment_word(tiny_model, "nepalquakenepal").words) for _ in range(5)}
        assert len(runs) == 1

    def test_matches_oracle_on_random_strings(self, tiny_model):
        rng = random.Random(20171013)
        alphabet = "nepalqu"
        for _ in range(60):
            s = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 10)))
            assert segment_word(tiny_model, s).words == oracle_segment(tiny_model, s)

    @given(st.text(alphabet="abcdelnpqu", min_size=1, max_size=9))
    @settings(max_examples=60, deadline=None)
    def test_reconstruction(self, s):
        model = UnigramModel(counts={"nepal": 100, "quake": 50, "ne": 1, "pal": 1}, total=152)
        seg = segment_word(model, s)
        assert "".join(seg.words) == s.lower()


class TestHashtagExpansions:
    def test_camel_case_hashtag(self, tiny_model):
        assert hashtag_expansions(tiny_model, "NepalQuake") == ["NepalQuake", "Nepal Quake"]

    def test_original_always_first(self, tiny_model):
        out = hashtag_expansions(tiny_model, "Kisiizi")
        assert out[0] == "Kisiizi"
        # a bad segmentation never displaces the verbatim hashtag
        assert all(" ".join(p.split()) == p for p in out)

    def test_plain_word_collapses_to_one(self):
        model = default_unigram_model()
        assert hashtag_expansions(model, "delhi") == ["delhi"]

    def test_underscore_body(self, tiny_model):
        out = hashtag_expansions(tiny_model, "Nepal_Quake")
        assert out[0] == "Nepal_Quake"
        assert "Nepal Quake" in out

    def test_segmentation_variant_included(self):
        model = default_unigram_model()
        out = hashtag_expansions(model, "keralafloods")
        assert out == ["keralafloods", "kerala floods"]

    def test_rejects_empty(self, tiny_model):
        with pytest.raises(ValueError):
            hashtag_expansions(tiny_model, "")

    @given(st.text(alphabet="abcdefgHIJK_", min_size=1, max_size=12))
    @settings(max_examples=80, deadline=None)
    def test_original_retention_property(self, tiny_model, body):
        out = hashtag_expansions(tiny_model, body)
        assert out and out[0] == body


class TestBundledModel:
    def test_size_and_augmentations(self):
        model = default_unigram_model()
        assert len(model.counts) > 40_000
        for word in ("bengal", "uru", "nepal", "quake", "chennai", "floods", "kerala"):
            assert word in model.counts, word

    def test_segmentation_is_type_stable(self):
        seg = segment_word(default_unigram_model(), "chennaifloods")
        assert isinstance(seg, Segmentation)
        assert seg.words == ["chennai", "floods"]
