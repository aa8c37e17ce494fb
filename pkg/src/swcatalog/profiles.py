"""Per-software derived profiles.

Everything here is publication-level: a publication that mentions a
package five times still counts once. Keyword clouds aggregate the
keywords of referencing publications, classification distributions use
the two-digit top-level section of each MSC code, and the similarity
between two packages mixes co-citation overlap (Jaccard over referencing
publication sets) with the cosine of their section count vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .matching import MentionIndex
from .records import CatalogError, Corpus, SoftwareRecord

DEFAULT_CLOUD_SIZE = 50
DEFAULT_SIMILAR_K = 10
DEFAULT_JACCARD_WEIGHT = 0.5
DEFAULT_COSINE_WEIGHT = 0.5


class SelfComparison(CatalogError):
    pass


@dataclass
class SoftwareProfile:
    sw_id: str
    keyword_cloud: list[tuple[str, int]] = field(default_factory=list)
    msc_counts: dict[str, int] = field(default_factory=dict)
    references_by_year: dict[int, int] = field(default_factory=dict)
    total_references: int = 0
    quality_ok: bool = False
    similar: list[tuple[str, float]] = field(default_factory=list)

    def msc_distribution(self) -> dict[str, dict]:
        """Counts plus derived frequencies, per top-level section."""
        total = sum(self.msc_counts.values())
        return {
            section: {"count": count, "frequency": count / total}
            for section, count in self.msc_counts.items()
        }


def _referencing_pubs(sw_id: str, index: MentionIndex, corpus: Corpus):
    """Referencing publications in pub_id order."""
    return [corpus.by_id[p] for p in sorted(index.publications_of(sw_id))
            if p in corpus.by_id]


def build_keyword_cloud(sw_id: str, index: MentionIndex, corpus: Corpus,
                        cloud_size: int = DEFAULT_CLOUD_SIZE) -> list[tuple[str, int]]:
    """Document-count keyword cloud over referencing publications.

    Counting is case-folded; each keyword is displayed in its most
    frequent observed surface form (ties by first sighting in pub_id
    order). The cloud is cut to cloud_size by weight descending, then
    keyword ascending.
    """
    doc_count: dict[str, int] = {}
    surface_count: dict[str, dict[str, int]] = {}
    surface_first_seen: dict[str, dict[str, int]] = {}
    order = 0
    for pub in _referencing_pubs(sw_id, index, corpus):
        seen_keys = set()
        for keyword in pub.keywords:
            display = keyword.strip()
            key = display.casefold()
            if key not in seen_keys:
                seen_keys.add(key)
                doc_count[key] = doc_count.get(key, 0) + 1
            forms = surface_count.setdefault(key, {})
            forms[display] = forms.get(display, 0) + 1
            firsts = surface_first_seen.setdefault(key, {})
            if display not in firsts:
                firsts[display] = order
                order += 1

    cloud = []
    for key, weight in doc_count.items():
        forms = surface_count[key]
        firsts = surface_first_seen[key]
        display = min(forms, key=lambda f: (-forms[f], firsts[f]))
        cloud.append((display, weight))
    cloud.sort(key=lambda item: (-item[1], item[0]))
    return cloud[:cloud_size]


def build_msc_distribution(sw_id: str, index: MentionIndex, corpus: Corpus) -> dict[str, int]:
    """Section counts: each referencing publication adds each of its
    distinct two-digit sections once."""
    counts: dict[str, int] = {}
    for pub in _referencing_pubs(sw_id, index, corpus):
        for section in sorted({code[:2] for code in pub.msc_codes}):
            counts[section] = counts.get(section, 0) + 1
    return counts


def build_timeseries(sw_id: str, index: MentionIndex, corpus: Corpus) -> dict[int, int]:
    """References per year; zero-count years are not stored."""
    series: dict[int, int] = {}
    for pub in _referencing_pubs(sw_id, index, corpus):
        series[pub.year] = series.get(pub.year, 0) + 1
    return series


def passes_quality_filter(record: SoftwareRecord, index: MentionIndex,
                          corpus: Corpus) -> bool:
    """A peer-reviewed reference or a portal listing vouches for quality."""
    if record.provenance == "PortalListed":
        return True
    return any(pub.peer_reviewed
               for pub in _referencing_pubs(record.sw_id, index, corpus))


def cosine(counts_a: dict[str, int], counts_b: dict[str, int]) -> float:
    norm_a = math.sqrt(sum(v * v for v in counts_a.values()))
    norm_b = math.sqrt(sum(v * v for v in counts_b.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    dot = sum(counts_a[k] * counts_b.get(k, 0) for k in counts_a)
    return dot / (norm_a * norm_b)


def jaccard(pubs_a: frozenset, pubs_b: frozenset) -> float:
    if not pubs_a and not pubs_b:
        return 0.0
    return len(pubs_a & pubs_b) / len(pubs_a | pubs_b)


def similarity(a: str, b: str, index: MentionIndex,
               msc_counts: dict[str, dict[str, int]],
               jaccard_weight: float = DEFAULT_JACCARD_WEIGHT,
               cosine_weight: float = DEFAULT_COSINE_WEIGHT) -> float:
    """Weighted mix of co-citation Jaccard and section-vector cosine."""
    if a == b:
        raise SelfComparison(f"cannot compare {a} with itself")
    j = jaccard(index.publications_of(a), index.publications_of(b))
    c = cosine(msc_counts.get(a, {}), msc_counts.get(b, {}))
    return jaccard_weight * j + cosine_weight * c


def top_similar(sw_id: str, scores: dict[str, float],
                k: int = DEFAULT_SIMILAR_K) -> list[tuple[str, float]]:
    """k best-scoring other packages, positive scores only, ties by id."""
    ranked = sorted(((other, score) for other, score in scores.items()
                     if other != sw_id and score > 0.0),
                    key=lambda item: (-item[1], item[0]))
    return ranked[:k]


def build_profiles(catalog: list[SoftwareRecord], index: MentionIndex,
                   corpus: Corpus,
                   cloud_size: int = DEFAULT_CLOUD_SIZE,
                   similar_k: int = DEFAULT_SIMILAR_K,
                   jaccard_weight: float = DEFAULT_JACCARD_WEIGHT,
                   cosine_weight: float = DEFAULT_COSINE_WEIGHT) -> dict[str, SoftwareProfile]:
    """Assemble every profile, then fill in the similar-software lists."""
    profiles: dict[str, SoftwareProfile] = {}
    for record in catalog:
        sw_id = record.sw_id
        timeseries = build_timeseries(sw_id, index, corpus)
        profiles[sw_id] = SoftwareProfile(
            sw_id=sw_id,
            keyword_cloud=build_keyword_cloud(sw_id, index, corpus, cloud_size),
            msc_counts=build_msc_distribution(sw_id, index, corpus),
            references_by_year=timeseries,
            total_references=len(index.publications_of(sw_id)),
            quality_ok=passes_quality_filter(record, index, corpus),
        )

    msc_by_id = {sw_id: profile.msc_counts for sw_id, profile in profiles.items()}
    ids = sorted(profiles)
    pair_scores: dict[str, dict[str, float]] = {sw_id: {} for sw_id in ids}
    for pos, a in enumerate(ids):
        for b in ids[pos + 1:]:
            score = similarity(a, b, index, msc_by_id,
                               jaccard_weight, cosine_weight)
            pair_scores[a][b] = score
            pair_scores[b][a] = score
    for sw_id in ids:
        profiles[sw_id].similar = top_similar(sw_id, pair_scores[sw_id], similar_k)
    return profiles
