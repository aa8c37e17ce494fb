"""Derived software profiles: keyword clouds, classification mix,
citation timelines, quality flags, and similar software.

Runs the full pipeline on the demo fixture and inspects one profile.
"""

import tempfile
from pathlib import Path

from swcatalog import extraction, fixtures, ingest, matching, profiles

work = Path(tempfile.mkdtemp(prefix="swcatalog-demo-"))
fixtures.write_fixture(work, seed=42)
corpus = ingest.load_corpus(work / "corpus.jsonl")

hits = extraction.extract_corpus(corpus)
candidates = extraction.merge_candidates(hits)
decisions = extraction.load_curation_file(work / "curation.tsv")
curated = extraction.apply_curation(candidates, decisions)
portals = ingest.load_portal_records(work / "portals.jsonl")
catalog = ingest.import_portal_records(portals, curated.accepted).catalog

lexicon = matching.compile_lexicon(catalog)
index = matching.build_mention_index(corpus, lexicon)
built = profiles.build_profiles(catalog, index, corpus)

by_name = {rec.name: rec for rec in catalog}
profile = built[by_name["SINGULAR"].sw_id]

print(f"SINGULAR is referenced by {profile.total_references} publications")
print("\nkeyword cloud (weight = referencing publications):")
for keyword, weight in profile.keyword_cloud[:8]:
    print(f"  {weight:2d}  {keyword}")

print("\ntop-level MSC sections:")
for section, entry in sorted(profile.msc_distribution().items(),
                             key=lambda kv: -kv[1]["count"]):
    print(f"  {section}: count={entry['count']} frequency={entry['frequency']:.2f}")

print("\nreferences over time:")
for year in sorted(profile.references_by_year):
    print(f"  {year}: {'#' * profile.references_by_year[year]}")

print("\nmost similar software (co-citation + classification cosine):")
for sw_id, score in profile.similar[:5]:
    print(f"  {score:.3f}  {sw_id}")

report_only = by_name["StochOpt"]
print(f"\nquality flag: SINGULAR={profile.quality_ok} "
      f"StochOpt={built[report_only.sw_id].quality_ok} "
      "(only technical reports reference StochOpt)")
