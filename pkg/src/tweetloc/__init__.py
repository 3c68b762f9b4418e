"""tweetloc: real-time toponym extraction from short, noisy microblog text.

An unsupervised pipeline — hashtag segmentation, normalization, rule-based
tagging, proper-noun chunking, suffix matching, dependency proximity, and
gazetteer verification — plus an evaluation kit, baselines, and a monitoring
service with a query API.
"""

from .normalize import RawTweet, Token, TokenKind, normalize_tweet, split_camel_case
from .segment import (
    Segmentation,
    UnigramModel,
    default_unigram_model,
    hashtag_expansions,
    load_unigram_model,
    segment_word,
)
from .tagger import PosTag, TagLexicons, default_tag_lexicons, tag_tokens
from .extract import (
    CandidateMention,
    CandidateSource,
    Cue,
    DependencyGraph,
    EmergencyLexicon,
    GraphSource,
    SuffixLexicon,
    chunk_proper_nouns,
    default_emergency_lexicon,
    default_suffix_lexicon,
    dependency_candidates,
    graph_distance,
    jaro_winkler,
    noun_phrase_candidates,
    suffix_pattern_candidates,
)
from .conllu import ParsedSentence, align_to_tokens, load_parse_file, parse_conllu
from .gazetteer import (
    AmbiguityGuard,
    GazetteerEntry,
    GazetteerIndex,
    LocatedMention,
    MatchKind,
    load_bundled_sample,
    load_geonames,
    lookup,
    verify_candidates,
)
from .pipeline import (
    ExtractionResult,
    Mode,
    PipelineConfig,
    Resources,
    baseline_extract,
    extract_locations,
)
from .evalkit import EvalReport, GoldRecord, MatchRule, evaluate, load_gold_corpus, time_extractor
from .service import TweetStore, histogram, query_tweets, query_untagged, run_server

__version__ = "0.1.0"
