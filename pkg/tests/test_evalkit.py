from __future__ import annotations

import random

import pytest

from tweetloc.evalkit import (
    EvalReport,
    GoldRecord,
    MatchRule,
    evaluate,
    load_gold_corpus,
    time_extractor,
)
from tweetloc.extract import CandidateMention, CandidateSource
from tweetloc.gazetteer import LocatedMention, MatchKind
from tweetloc.pipeline import ExtractionResult
from tests.conftest import make_tweet


def fake_mention(phrase, entry_id=1, matched=None):
    return LocatedMention(
        candidate=CandidateMention(phrase, (0, 0), {CandidateSource.NOUN_PHRASE}),
        entry_id=entry_id,
        matched_text=matched if matched is not None else phrase.lower(),
        lat=0.0,
        lon=0.0,
        match_kind=MatchKind.EXACT_NAME,
    )


def fake_extractor(outputs):
    """Extractor returning canned phrase lists keyed by tweet id."""

    def run(tweet):
        phrases = outputs[tweet.id]
        mentions = [fake_mention(p, entry_id=i + 1) for i, p in enumerate(phrases)]
        return ExtractionResult(tweet.id, mentions, untagged=not mentions, elapsed=0.001)

    return run


def gold(tweet_id, names):
    return GoldRecord(tweet=make_tweet("text " + tweet_id, tweet_id),
                      gold_locations=frozenset(names))


class TestWorkedExamples:
    def test_perfect_match(self):
        report = evaluate([gold("a", {"Delhi"})], fake_extractor({"a": ["Delhi"]}))
        assert (report.precision, report.recall, report.f_score) == (1.0, 1.0, 1.0)

    def test_one_third_precision(self):
        report = evaluate(
            [gold("a", {"delhi"})],
            fake_extractor({"a": ["delhi", "song", "monsoon"]}),
        )
        assert report.precision == pytest.approx(1 / 3)
        assert report.recall == 1.0
        assert report.f_score == pytest.approx(0.5)

    def test_pooled_micro_average(self):
        report = evaluate(
            [gold("a", {"a", "d"}), gold("b", {"b"})],
            fake_extractor({"a": ["a"], "b": ["b", "c"]}),
        )
        assert report.precision == pytest.approx(2 / 3)
        assert report.recall == pytest.approx(2 / 3)
        assert report.f_score == pytest.approx(2 / 3)


class TestMatching:
    def test_case_and_whitespace_insensitive(self):
        report = evaluate([gold("a", {"Tamil  Nadu"})], fake_extractor({"a": ["tamil nadu"]}))
        assert report.recall == 1.0

    def test_alternate_name_matching_uses_index(self, index, resources):
        # the tweet says Bangalore; the annotator wrote the canonical name
        def extractor(tweet):
            from tweetloc.pipeline import PipelineConfig, extract_locations

            return extract_locations(tweet, PipelineConfig(), resources)

        corpus = [GoldRecord(tweet=make_tweet("rains in Bangalore today", "a"),
                             gold_locations=frozenset({"Bengaluru"}))]
        with_alternates = evaluate(corpus, extractor, MatchRule.ALTERNATES, index)
        exact_only = evaluate(corpus, extractor, MatchRule.EXACT, index)
        assert with_alternates.recall == 1.0
        assert exact_only.recall == 0.0

    def test_matched_text_comparison(self):
        # phrase differs from gold but the matched gazetteer text agrees
        def extractor(tweet):
            mention = fake_mention("Kerala Floods", matched="kerala")
            return ExtractionResult(tweet.id, [mention], untagged=False, elapsed=0.0)

        report = evaluate([gold("a", {"Kerala"})], extractor, MatchRule.EXACT)
        assert report.recall == 1.0


class TestReportInvariants:
    def test_f_identity_on_random_set_pairs(self):
        rng = random.Random(101)
        universe = [f"loc{i}" for i in range(12)]
        for _ in range(1000):
            retrieved = set(rng.sample(universe, rng.randint(0, 8)))
            correct = set(rng.sample(universe, rng.randint(0, 8)))
            report = evaluate(
                [gold("a", correct or {"none-such"})],
                fake_extractor({"a": sorted(retrieved)}),
            )
            p, r, f = report.precision, report.recall, report.f_score
            assert 0.0 <= p <= 1.0 and 0.0 <= r <= 1.0
            if p + r > 0:
                assert f == pytest.approx(2 * p * r / (p + r))
            else:
                assert f == 0.0

    def test_empty_empty_tweet_changes_nothing(self):
        base = evaluate(
            [gold("a", {"delhi"})], fake_extractor({"a": ["delhi", "x"]})
        )
        padded = evaluate(
            [gold("a", {"delhi"}), GoldRecord(make_tweet("no places", "b"), frozenset())],
            fake_extractor({"a": ["delhi", "x"], "b": []}),
        )
        assert (base.precision, base.recall, base.f_score) == \
            (padded.precision, padded.recall, padded.f_score)

    def test_extractor_failure_counts_empty(self, caplog):
        def burning(tweet):
            if tweet.id == "bad":
                raise RuntimeError("boom")
            return fake_extractor({"ok": ["delhi"]})(tweet)

        report = evaluate([gold("ok", {"delhi"}), gold("bad", {"kerala"})], burning)
        assert report.errors == 1
        assert report.recall == pytest.approx(0.5)

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            evaluate([], fake_extractor({}))

    def test_per_tweet_rows(self):
        report = evaluate([gold("a", {"delhi"})], fake_extractor({"a": ["delhi", "junk"]}))
        (row,) = report.per_tweet
        tweet_id, retrieved, correct, matched_set = row
        assert tweet_id == "a"
        assert matched_set <= retrieved and matched_set <= correct


class TestGoldCorpus:
    def test_load_bundled(self):
        from importlib import resources as ir

        text = ir.files("tweetloc.data").joinpath("gold_corpus.jsonl").read_text("utf-8")
        corpus = load_gold_corpus(text)
        assert len(corpus) >= 30
        ids = [r.tweet.id for r in corpus]
        assert len(ids) == len(set(ids))
        assert any(r.gold_locations == frozenset() for r in corpus)

    def test_malformed_line_reports_position(self):
        with pytest.raises(ValueError, match="line 2"):
            load_gold_corpus('{"id": "a", "text": "x", "created_at": "2017-01-01T00:00:00Z"}\nnot json')


class TestTiming:
    def test_empty_corpus(self):
        assert time_extractor([], lambda t: None) == (0.0, 0.0)

    def test_best_of_repeats(self):
        calls = []

        def extractor(tweet):
            calls.append(tweet.id)
            return ExtractionResult(tweet.id, [], untagged=True, elapsed=0.0)

        mean, total = time_extractor([make_tweet("x", "a"), make_tweet("y", "b")],
                                     extractor, repeats=3)
        assert len(calls) == 6
        assert mean == pytest.approx(total / 2)
        assert total >= 0.0

    def test_repeats_validated(self):
        with pytest.raises(ValueError):
            time_extractor([make_tweet("x")], lambda t: None, repeats=0)
