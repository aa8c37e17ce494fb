"""Finding catalog software in titles and abstracts.

Shows the case policies and the ambiguity guard: a name that is also an
everyday word only counts when a trigger word shares the sentence or a
version number follows.
"""

from swcatalog.matching import compile_lexicon, find_mentions
from swcatalog.records import PublicationRecord, SoftwareRecord

catalog = [
    SoftwareRecord(sw_id="swm:singular", name="SINGULAR"),
    SoftwareRecord(sw_id="swm:maple", name="Maple"),
    SoftwareRecord(sw_id="swm:deal-ii", name="deal.II"),
]
lexicon = compile_lexicon(catalog)

for entry in lexicon.entries:
    print(f"{entry.pattern:<10} policy={entry.policy:<15} ambiguous={entry.ambiguous}")

abstracts = [
    "The ideal was computed with SINGULAR.",          # strict match
    "We study singular value decompositions.",        # wrong case: no match
    "We rested under a maple tree.",                  # ambiguous, no trigger
    "The Maple package was used for integration.",    # trigger rescues it
    "Everything was re-checked in Maple 2021 later.", # version token rescues it
    "Meshes come from the deal.II library.",          # internal dot survives
]

print()
for text in abstracts:
    pub = PublicationRecord(pub_id="demo", title="", abstract_text=text, year=2010)
    mentions = find_mentions(pub, lexicon)
    shown = [(m.sw_id, text[m.start:m.end]) for m in mentions]
    print(f"{text!r}\n  -> {shown or 'no mentions'}")
