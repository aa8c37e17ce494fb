"""Immutable index snapshots.

A snapshot is the single artifact the service loads: curated catalog,
derived profiles, the mention index, and the publication metadata that
detail pages need. It is written as one canonically-serialized JSON
document, so identical pipeline inputs (with an injected build
timestamp) produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .matching import MentionIndex
from .profiles import SoftwareProfile
from .records import CatalogError, Corpus, SoftwareRecord

FORMAT_VERSION = 1


class SnapshotFormatError(CatalogError):
    pass


class DanglingReference(CatalogError):
    pass


@dataclass(frozen=True)
class PublicationMeta:
    pub_id: str
    title: str
    authors: tuple[str, ...]
    year: int


@dataclass
class IndexSnapshot:
    catalog: list[SoftwareRecord]
    profiles: dict[str, SoftwareProfile]
    index: MentionIndex
    publications: dict[str, PublicationMeta]
    built_at: str
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        self.by_sw_id = {rec.sw_id: rec for rec in self.catalog}

    def validate(self) -> None:
        ids = set(self.by_sw_id)
        if set(self.profiles) != ids:
            raise DanglingReference("profiles and catalog ids do not line up")
        for record in self.catalog:
            for dep in record.dependencies:
                if dep not in ids:
                    raise DanglingReference(
                        f"{record.sw_id} depends on unknown {dep!r}")
        for sw_id, pubs in self.index.by_software.items():
            if sw_id not in ids:
                raise DanglingReference(f"mention index references unknown {sw_id!r}")
            for pub_id in pubs:
                if pub_id not in self.publications:
                    raise DanglingReference(
                        f"mention index references unknown publication {pub_id!r}")
        for profile in self.profiles.values():
            for other, _score in profile.similar:
                if other not in ids:
                    raise DanglingReference(
                        f"{profile.sw_id} lists unknown similar id {other!r}")


def build_snapshot(catalog: list[SoftwareRecord],
                   profiles: dict[str, SoftwareProfile],
                   index: MentionIndex, corpus: Corpus,
                   built_at: str) -> IndexSnapshot:
    publications = {
        pub.pub_id: PublicationMeta(pub_id=pub.pub_id, title=pub.title,
                                    authors=pub.authors, year=pub.year)
        for pub in corpus
    }
    snapshot = IndexSnapshot(
        catalog=sorted(catalog, key=lambda r: r.sw_id),
        profiles=profiles,
        index=index,
        publications=publications,
        built_at=built_at,
    )
    snapshot.validate()
    return snapshot


def _profile_doc(profile: SoftwareProfile) -> dict:
    return {
        "keyword_cloud": [[kw, weight] for kw, weight in profile.keyword_cloud],
        "msc_counts": dict(profile.msc_counts),
        "references_by_year": {str(y): c for y, c in profile.references_by_year.items()},
        "total_references": profile.total_references,
        "quality_ok": profile.quality_ok,
        "similar": [[sw_id, score] for sw_id, score in profile.similar],
    }


def _profile_from_doc(sw_id: str, doc: dict) -> SoftwareProfile:
    return SoftwareProfile(
        sw_id=sw_id,
        keyword_cloud=[(kw, int(w)) for kw, w in doc["keyword_cloud"]],
        msc_counts={k: int(v) for k, v in doc["msc_counts"].items()},
        references_by_year={int(y): int(c) for y, c in doc["references_by_year"].items()},
        total_references=int(doc["total_references"]),
        quality_ok=bool(doc["quality_ok"]),
        similar=[(other, float(score)) for other, score in doc["similar"]],
    )


def save_snapshot(snapshot: IndexSnapshot, path) -> None:
    doc = {
        "format_version": snapshot.format_version,
        "built_at": snapshot.built_at,
        "catalog": [rec.to_mapping() for rec in snapshot.catalog],
        "profiles": {sw_id: _profile_doc(p) for sw_id, p in snapshot.profiles.items()},
        "mentions_by_software": {sw_id: sorted(pubs)
                                 for sw_id, pubs in snapshot.index.by_software.items()},
        "publications": [
            {"pub_id": m.pub_id, "title": m.title,
             "authors": list(m.authors), "year": m.year}
            for m in sorted(snapshot.publications.values(), key=lambda m: m.pub_id)
        ],
    }
    payload = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(payload + "\n")


def load_snapshot(path) -> IndexSnapshot:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SnapshotFormatError(f"cannot read snapshot {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SnapshotFormatError(f"snapshot {path} is not valid JSON: {exc}") from exc

    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise SnapshotFormatError(
            f"snapshot format_version {version!r} unsupported (expected {FORMAT_VERSION})")

    try:
        catalog = [SoftwareRecord.from_mapping(m) for m in doc["catalog"]]
        profiles = {sw_id: _profile_from_doc(sw_id, p)
                    for sw_id, p in doc["profiles"].items()}
        index = MentionIndex(
            (sw_id, pub_id)
            for sw_id, pubs in doc["mentions_by_software"].items()
            for pub_id in pubs
        )
        publications = {
            m["pub_id"]: PublicationMeta(pub_id=m["pub_id"], title=m["title"],
                                         authors=tuple(m["authors"]), year=int(m["year"]))
            for m in doc["publications"]
        }
        built_at = doc["built_at"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SnapshotFormatError(f"snapshot {path} is malformed: {exc}") from exc

    snapshot = IndexSnapshot(catalog=catalog, profiles=profiles, index=index,
                             publications=publications, built_at=built_at,
                             format_version=version)
    snapshot.validate()
    return snapshot
