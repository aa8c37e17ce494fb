"""Mining software names out of publication titles.

Generates the seeded demo corpus, runs the four title rules over it, and
walks through how individual titles score.
"""

import tempfile
from pathlib import Path

from swcatalog import extraction, fixtures, ingest

work = Path(tempfile.mkdtemp(prefix="swcatalog-demo-"))
fixtures.write_fixture(work, seed=42)
corpus = ingest.load_corpus(work / "corpus.jsonl")
print(f"corpus: {len(corpus)} publications in {work}")

# A single title, rule by rule
title = "SINGULAR: a computer algebra system for polynomial computations"
for hit in extraction.extract_candidates(title, "demo-pub"):
    rules = ", ".join(sorted(r.name for r in hit.rules))
    print(f"\n{title!r}\n  -> surface={hit.surface!r} rules={{{rules}}} "
          f"score={hit.hit_score}")

title = "The PARDISO solver 4.0 on shared memory machines"
for hit in extraction.extract_candidates(title, "demo-pub"):
    rules = ", ".join(sorted(r.name for r in hit.rules))
    print(f"\n{title!r}\n  -> surface={hit.surface!r} rules={{{rules}}} "
          f"score={hit.hit_score}")

# Titles with no artificial word near a trigger stay silent
print("\ndistractor:", extraction.extract_candidates(
    "On the convergence of gradient descent", "demo-pub"))

# The whole corpus: hits are merged per normalized name with a noisy-or,
# so names sighted in several titles rise to the top of the worklist.
hits = extraction.extract_corpus(corpus)
candidates = extraction.merge_candidates(hits)
print(f"\n{len(hits)} hits merged into {len(candidates)} candidates; top ten:")
for cand in candidates[:10]:
    print(f"  {cand.score:.4f}  {cand.normalized_name:<16} "
          f"evidence={len(cand.evidence)} surfaces={sorted(cand.surfaces)}")

print("\nThe worklist then goes to a human; curation decisions live in "
      f"{work / 'curation.tsv'}")
