"""
The four candidate sources
==========================

Location candidates come from four independent detectors.  Each one covers a
blind spot of the others; the union goes to the gazetteer, which has the
final word.
"""

from tweetloc import (
    DependencyGraph,
    chunk_proper_nouns,
    default_emergency_lexicon,
    default_suffix_lexicon,
    default_tag_lexicons,
    dependency_candidates,
    graph_distance,
    jaro_winkler,
    normalize_tweet,
    noun_phrase_candidates,
    suffix_pattern_candidates,
    tag_tokens,
)

lexicons = default_tag_lexicons()
suffixes = default_suffix_lexicon()
emergencies = default_emergency_lexicon()


def show(title, candidates):
    print(f"\n{title}")
    for c in candidates:
        cues = ",".join(sorted(x.value for x in c.cues)) or "-"
        print(f"  {c.phrase!r:28s} cues={cues}")


# 1. Proper-noun chunking: capitalized runs, split at delimiters, with
#    preposition and suffix cues.  Note the suffix word is absorbed AND a
#    bare variant is kept, since gazetteers rarely store "X hospital".
text = "Urgent B+ platelets needed At Vinayak hospital, Gujranwala town,delhi"
tagged = tag_tokens(normalize_tweet(text), lexicons)
show("proper-noun chunks", chunk_proper_nouns(tagged, suffixes, lexicons))

# 2. Suffix patterns: the all-lowercase version defeats the chunker, but the
#    window around the suffix word "hospital" still finds the place.
lower = "urgent b+ platelets needed at vinayak hospital, gujranwala town,delhi"
tagged_lower = tag_tokens(normalize_tweet(lower), lexicons)
show("suffix patterns (lowercase tweet)", suffix_pattern_candidates(tagged_lower, suffixes, emergencies))

# 3. Dependency proximity: words a couple of hops from an emergency word.
#    With no parse supplied, a token-adjacency chain stands in, so hop count
#    equals token distance.
text = "dengue spreading fast in Kerala"
tagged = tag_tokens(normalize_tweet(text), lexicons)
graph = DependencyGraph.token_window(len(tagged))
print("\nhops dengue->Kerala:", graph_distance(graph, 0, 4))
show("dependency proximity", dependency_candidates(tagged, graph, emergencies, d_max=3))

# 4. Noun phrases: the recall net for anything the first three miss.
show("noun phrases", noun_phrase_candidates(tagged))

# Fuzzy suffixes tolerate tweet spelling: "hosp" sits within Jaro-Winkler
# 0.90 of "hospital", so "May Hosp." still cues as a building.
print("\njaro_winkler('hosp', 'hospital') =", round(jaro_winkler("hosp", "hospital"), 4))
print("jaro_winkler('MARTHA', 'MARHTA') =", round(jaro_winkler("MARTHA", "MARHTA"), 4))
