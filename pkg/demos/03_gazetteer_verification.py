"""
Gazetteer lookup and the ambiguity guard
========================================

Candidate phrases become mentions only if a gazetteer knows them.  Lookup is
staged (exact phrase, then suffix-dropped, then sub-n-gram), and a guard
refuses bare common words: "song" is a village in Sikkim, but most tweets
containing "song" are about music.
"""

from tweetloc import (
    CandidateMention,
    CandidateSource,
    Cue,
    load_bundled_sample,
    lookup,
    verify_candidates,
)

index = load_bundled_sample()
print(f"bundled India slice: {index.entry_count} entries, "
      f"{len(index.name_index)} indexed names\n")

# Staged lookup: watch the match kind change as the stages engage.
for phrase in ("Tamil Nadu", "Gujranwala town", "rains near Kolkata", "zzzzqq"):
    hits = lookup(index, phrase)
    if hits:
        entry, kind = hits[0]
        print(f"{phrase!r:22s} -> {entry.name} ({kind.value}, pop {entry.population})")
    else:
        print(f"{phrase!r:22s} -> no match")

# Homonyms resolve by population, then stable id order.
print("\nAurangabad:", [(e.name, e.population) for e, _ in lookup(index, "Aurangabad")])


def cand(phrase, cues=(), source=CandidateSource.NOUN_PHRASE):
    return CandidateMention(phrase, (0, 0), {source}, cues=set(cues))


# The guard in action: identical word, different evidence.
print()
for candidate, label in [
    (cand("song"), "bare lyric mention"),
    (cand("song", cues={Cue.PRECEDING_PREPOSITION}), "'floods near song'"),
    (cand("Song"), "capitalized in source"),
]:
    got = verify_candidates(index, [candidate])
    verdict = f"accepted at ({got[0].lat}, {got[0].lon})" if got else "rejected"
    print(f"{label:24s} -> {verdict}")
