from __future__ import annotations

from datetime import datetime, timezone

import pytest

from tweetloc.extract import default_emergency_lexicon, default_suffix_lexicon
from tweetloc.gazetteer import load_bundled_sample
from tweetloc.normalize import RawTweet
from tweetloc.pipeline import PipelineConfig, Resources
from tweetloc.segment import UnigramModel
from tweetloc.tagger import default_tag_lexicons

NOW = datetime(2017, 10, 1, 12, 0, 0, tzinfo=timezone.utc)


def make_tweet(text: str, tweet_id: str = "t", **kwargs) -> RawTweet:
    return RawTweet(id=tweet_id, text=text, created_at=NOW, **kwargs)


@pytest.fixture(scope="session")
def resources() -> Resources:
    return Resources.bundled()


@pytest.fixture(scope="session")
def index():
    return load_bundled_sample()


@pytest.fixture(scope="session")
def lexicons():
    return default_tag_lexicons()


@pytest.fixture(scope="session")
def suffixes():
    return default_suffix_lexicon()


@pytest.fixture(scope="session")
def emergencies():
    return default_emergency_lexicon()


@pytest.fixture
def config() -> PipelineConfig:
    return PipelineConfig()


@pytest.fixture(scope="session")
def tiny_model() -> UnigramModel:
    # the four-word model used by the segmentation examples
    counts = {"nepal": 100, "quake": 50, "ne": 1, "pal": 1}
    return UnigramModel(counts=counts, total=sum(counts.values()))
