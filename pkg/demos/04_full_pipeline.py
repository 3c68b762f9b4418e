"""
The full pipeline, tweet in, coordinates out
============================================

Everything wired together: normalization, tagging, the four candidate
sources, hashtag expansion, and gazetteer verification, with a supplied
dependency parse for the showcase sentence.
"""

from datetime import datetime, timezone

from tweetloc import PipelineConfig, RawTweet, Resources, extract_locations

resources = Resources.bundled()
cfg = PipelineConfig()
now = datetime(2017, 10, 1, 9, 30, tzinfo=timezone.utc)

tweets = [
    # the geo field says New Delhi; the text names Tamil Nadu, and text wins
    RawTweet("d1", "Will discuss on @TimesNow at 8.30 am today regarding "
                   "Dengue Fever in Tamil Nadu.", now, geo=(28.61, 77.21)),
    # the bundled CoNLL-U parse for this id puts Mumbai two hops from
    # "floods"; flat word distance is seven
    RawTweet("t003", "Mumbai lost its mudflats and wetlands, now floods "
                     "with every monsoon.", now),
    RawTweet("d3", "#KeralaFloods rescue boats heading to Alappuzha", now),
    RawTweet("d4", "My favourite song just came on the radio", now),
]

for tweet in tweets:
    result = extract_locations(tweet, cfg, resources)
    print(f"\n{tweet.text}")
    if result.untagged:
        print("  -> untagged (no verified location)")
    for m in result.mentions:
        sources = ",".join(sorted(s.value for s in m.candidate.sources))
        print(f"  -> {m.phrase!r} matched {m.matched_text!r} "
              f"at ({m.lat}, {m.lon}) via {sources}")

# Turning the guard off reproduces the unguarded behavior: "monsoon" (a
# place in Jharkhand) comes back as a mention of the Mumbai sentence.
loose = PipelineConfig(guard_enabled=False)
result = extract_locations(tweets[1], loose, resources)
print("\nguard off:", sorted(m.matched_text for m in result.mentions))
