"""
Normalizing noisy tweet text and expanding hashtags
===================================================

Tweets arrive full of URLs, mentions, retweet markers, and glued-together
hashtags.  This walkthrough shows what the normalizer keeps, what it drops,
and how a hashtag body becomes a set of candidate phrases.
"""

from tweetloc import default_unigram_model, hashtag_expansions, normalize_tweet

raw = "RT @ndma_official Rescue ops in #ChennaiFloods continue... http://t.co/x1"
print("raw tweet:", raw)

# URLs, the mention, the RT marker and the ellipsis disappear; the hashtag
# body survives both intact and split at its CamelCase boundary.
for tok in normalize_tweet(raw):
    marks = []
    if tok.hashtag_origin:
        marks.append(f"hashtag={tok.hashtag_origin}")
    if tok.camel_split:
        marks.append("camel-part")
    print(f"  {tok.kind.value:5s} {tok.surface!r:18s} span={tok.span} {' '.join(marks)}")

# Case is never folded: "delhi" and "Delhi" stay distinct surfaces, which is
# what lets the tagger tell proper nouns apart later.
print()
print("case preserved:", [t.surface for t in normalize_tweet("DELHI delhi Delhi")])

# The unigram model turns glued hashtags into words.  The original body is
# always kept too: an unusual place name may be exactly what we must not lose.
model = default_unigram_model()
for body in ("NepalQuake", "keralafloods", "Bengaluru", "Kisiizi"):
    print(f"#{body:14s} -> {hashtag_expansions(model, body)}")

# "#Bengaluru" illustrates the known hazard: the model happily produces
# "bengal" + "uru", both real places.  The gazetteer guard downstream is what
# keeps most of these from surfacing as false mentions.
