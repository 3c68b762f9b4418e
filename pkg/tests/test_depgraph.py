from __future__ import annotations

import pytest

from tweetloc.conllu import align_to_tokens, bundled_parses, parse_conllu
from tweetloc.extract import (
    DependencyGraph,
    GraphSource,
    dependency_candidates,
    graph_distance,
)
from tweetloc.normalize import TokenKind, normalize_tweet
from tweetloc.tagger import tag_tokens

FIG_SENTENCE = "Mumbai lost its mudflats and wetlands, now floods with every monsoon."


@pytest.fixture(scope="module")
def fig_parse():
    return bundled_parses()["t003"]


@pytest.fixture(scope="module")
def fig_aligned(fig_parse):
    tokens = normalize_tweet(FIG_SENTENCE)
    aligned = align_to_tokens(fig_parse, tokens)
    assert aligned is not None
    return tokens, *aligned


class TestGraphDistance:
    def test_identity(self):
        g = DependencyGraph.token_window(4)
        assert graph_distance(g, 2, 2) == 0

    def test_symmetry(self):
        g = DependencyGraph.token_window(6)
        for i in range(6):
            for j in range(6):
                assert graph_distance(g, i, j) == graph_distance(g, j, i)

    def test_unreachable(self):
        g = DependencyGraph(n=2, edges=frozenset(), source=GraphSource.SUPPLIED)
        assert graph_distance(g, 0, 1) is None

    def test_out_of_range_rejected(self):
        g = DependencyGraph.token_window(3)
        with pytest.raises(ValueError):
            graph_distance(g, 0, 3)
        with pytest.raises(ValueError):
            graph_distance(g, -1, 0)

    def test_token_window_distance_equals_offset(self):
        g = DependencyGraph.token_window(8)
        assert graph_distance(g, 1, 5) == 4

    def test_graph_validation(self):
        with pytest.raises(ValueError):
            DependencyGraph(n=2, edges=frozenset({(0, 2)}), source=GraphSource.SUPPLIED)
        with pytest.raises(ValueError):
            DependencyGraph(n=2, edges=frozenset({(1, 1)}), source=GraphSource.SUPPLIED)


class TestConllu:
    def test_parse_basic(self):
        text = (
            "# sent_id = s1\n"
            "1\tfloods\tflood\tNOUN\tNNS\t_\t0\troot\t_\t_\n"
            "2\tin\tin\tADP\tIN\t_\t3\tcase\t_\t_\n"
            "3\tKerala\tKerala\tPROPN\tNNP\t_\t1\tnmod\t_\t_\n"
        )
        (sentence,) = parse_conllu(text)
        assert sentence.sent_id == "s1"
        assert sentence.forms == ("floods", "in", "Kerala")
        assert sentence.edges == frozenset({(1, 2), (0, 2)})

    def test_punct_rows_dropped_with_reattachment(self, fig_parse):
        assert len(fig_parse.forms) == 11  # 13 rows minus two punctuation marks
        assert "," not in fig_parse.forms

    def test_column_count_checked(self):
        with pytest.raises(ValueError, match="line 1"):
            parse_conllu("1\tword\n")

    def test_multiword_ranges_skipped(self):
        text = (
            "1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n"
            "1\tde\tde\tADP\t_\t_\t2\tcase\t_\t_\n"
            "2\tel\tel\tDET\t_\t_\t0\troot\t_\t_\n"
        )
        (sentence,) = parse_conllu(text)
        assert sentence.forms == ("de", "el")

    def test_alignment_count_mismatch_returns_none(self, fig_parse):
        tokens = normalize_tweet("too short")
        assert align_to_tokens(fig_parse, tokens) is None


class TestFigureParse:
    def test_mumbai_to_floods_is_two_hops(self, fig_aligned):
        tokens, graph, _ = fig_aligned
        idx = {t.surface: i for i, t in enumerate(tokens)}
        assert graph_distance(graph, idx["Mumbai"], idx["floods"]) == 2
        # while the flat token offset is 7 words
        words = [t for t in tokens if t.kind is TokenKind.WORD]
        w = {t.surface: i for i, t in enumerate(words)}
        assert w["floods"] - w["Mumbai"] == 7

    def test_mumbai_found_by_dependency_proximity(self, fig_aligned, resources):
        tokens, graph, upos = fig_aligned
        from tweetloc.pipeline import _external_tags

        tagged = tag_tokens(tokens, resources.tag_lexicons, _external_tags(tokens, upos))
        cands = dependency_candidates(tagged, graph, resources.emergencies, d_max=3)
        assert "Mumbai" in [c.phrase for c in cands]

    def test_threshold_monotonicity(self, fig_aligned, resources):
        tokens, graph, upos = fig_aligned
        from tweetloc.pipeline import _external_tags

        tagged = tag_tokens(tokens, resources.tag_lexicons, _external_tags(tokens, upos))
        at2 = {c.phrase for c in dependency_candidates(tagged, graph, resources.emergencies, 2)}
        at3 = {c.phrase for c in dependency_candidates(tagged, graph, resources.emergencies, 3)}
        assert at2 <= at3


class TestDependencyCandidates:
    def test_no_emergency_word_no_candidates(self, lexicons, emergencies):
        tokens = normalize_tweet("sunny day in Delhi")
        tagged = tag_tokens(tokens, lexicons)
        g = DependencyGraph.token_window(len(tokens))
        assert dependency_candidates(tagged, g, emergencies) == []

    def test_fallback_window_reaches_nearby_propn(self, lexicons, emergencies):
        tokens = normalize_tweet("dengue in Kerala")
        tagged = tag_tokens(tokens, lexicons)
        g = DependencyGraph.token_window(len(tokens))
        assert graph_distance(g, 0, 2) == 2
        cands = dependency_candidates(tagged, g, emergencies, d_max=3)
        assert [c.phrase for c in cands] == ["Kerala"]

    def test_emergency_terms_never_become_candidates(self, lexicons, emergencies):
        tokens = normalize_tweet("floods after earthquake in Gangtok")
        tagged = tag_tokens(tokens, lexicons)
        g = DependencyGraph.token_window(len(tokens))
        for cand in dependency_candidates(tagged, g, emergencies, d_max=3):
            assert not any(emergencies.matches(w) for w in cand.phrase.split())

    def test_graph_size_checked(self, lexicons, emergencies):
        tokens = normalize_tweet("dengue in Kerala")
        tagged = tag_tokens(tokens, lexicons)
        with pytest.raises(ValueError):
            dependency_candidates(tagged, DependencyGraph.token_window(2), emergencies)

    def test_d_max_validated(self, lexicons, emergencies):
        with pytest.raises(ValueError):
            dependency_candidates([], DependencyGraph.token_window(0), emergencies, d_max=0)
