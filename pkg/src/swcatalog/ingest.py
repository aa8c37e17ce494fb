"""Corpus and catalog ingestion.

File convention: UTF-8, one JSON object per line, field names exactly as
declared on the record types, optional absent fields omitted. Blank lines
are ignored.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field, replace
from pathlib import Path

from .records import (
    CorpusFormatError,
    Corpus,
    EmptySlug,
    MalformedRecord,
    PortalRecord,
    PublicationRecord,
    SoftwareRecord,
    UnreadableFile,
    ascii_fold,
    normalize_name,
)

log = logging.getLogger(__name__)


def _iter_lines(path: str | Path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if line.strip():
                    yield line_no, line
    except OSError as exc:
        raise UnreadableFile(f"cannot read {path}: {exc}") from exc


def _load_records(path, parse):
    records, problems = [], []
    for line_no, line in _iter_lines(path):
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            problems.append(MalformedRecord(line_no, f"invalid record syntax: {exc.msg}"))
            continue
        try:
            records.append((line_no, parse(data)))
        except ValueError as exc:
            problems.append(MalformedRecord(line_no, str(exc)))
    return records, problems


def load_corpus(path: str | Path, strict: bool = True) -> Corpus:
    """Load a publication corpus; in strict mode any bad line aborts the load."""
    corpus, problems = load_corpus_lenient(path)
    if strict and problems:
        raise CorpusFormatError(str(path), problems)
    return corpus


def load_corpus_lenient(path: str | Path) -> tuple[Corpus, list[MalformedRecord]]:
    """Load what parses, reporting rejected lines instead of failing."""
    records, problems = _load_records(path, PublicationRecord.from_mapping)
    seen: set[str] = set()
    unique = []
    for line_no, rec in records:
        if rec.pub_id in seen:
            problems.append(MalformedRecord(line_no, f"duplicate pub_id {rec.pub_id!r}"))
        else:
            seen.add(rec.pub_id)
            unique.append(rec)
    problems.sort(key=lambda p: p.line_no)
    return Corpus(unique), problems


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in corpus:
            fh.write(json.dumps(rec.to_mapping(), ensure_ascii=False) + "\n")


def load_catalog(path: str | Path, strict: bool = True) -> list[SoftwareRecord]:
    records, problems = _load_records(path, SoftwareRecord.from_mapping)
    seen: set[str] = set()
    out = []
    for line_no, rec in records:
        if rec.sw_id in seen:
            problems.append(MalformedRecord(line_no, f"duplicate sw_id {rec.sw_id!r}"))
        else:
            seen.add(rec.sw_id)
            out.append(rec)
    if strict and problems:
        raise CorpusFormatError(str(path), problems)
    return out


def write_catalog(records: list[SoftwareRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_mapping(), ensure_ascii=False) + "\n")


def load_portal_records(path: str | Path, strict: bool = True) -> list[PortalRecord]:
    records, problems = _load_records(path, PortalRecord.from_mapping)
    if strict and problems:
        raise CorpusFormatError(str(path), problems)
    return [rec for _, rec in records]


def write_portal_records(records: list[PortalRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_mapping(), ensure_ascii=False) + "\n")


_NON_ALNUM_RUN = re.compile(r"[^a-z0-9]+")


def slugify(name: str) -> str:
    slug = _NON_ALNUM_RUN.sub("-", ascii_fold(name).lower()).strip("-")
    if not slug:
        raise EmptySlug(f"name {name!r} contains no alphanumeric characters")
    return slug


def assign_persistent_id(name: str, existing_ids: set[str]) -> str:
    """Slug-based persistent id; numeric suffix resolves collisions.

    Pure in (name, existing_ids): the same inputs always produce the same id.
    """
    base = f"swm:{slugify(name)}"
    if base not in existing_ids:
        return base
    n = 2
    while f"{base}-{n}" in existing_ids:
        n += 1
    return f"{base}-{n}"


@dataclass(frozen=True)
class HomepageConflict:
    portal_name: str
    software_name: str
    existing: str
    incoming: str


@dataclass
class ImportResult:
    catalog: list[SoftwareRecord]
    created: list[str] = field(default_factory=list)
    enriched: list[str] = field(default_factory=list)
    conflicts: list[HomepageConflict] = field(default_factory=list)


def import_portal_records(records: list[PortalRecord],
                          catalog: list[SoftwareRecord]) -> ImportResult:
    """Merge portal listings into an existing catalog.

    A portal record whose normalized name equals a catalog name or alias
    enriches that record (absent homepage/description are filled, present
    values are never overwritten). Everything else becomes a new record
    with PortalListed provenance. Applying the same import twice yields
    the same catalog.
    """
    merged = list(catalog)
    index: dict[str, int] = {}
    for pos, rec in enumerate(merged):
        index.setdefault(normalize_name(rec.name), pos)
        for alias in rec.aliases:
            index.setdefault(normalize_name(alias), pos)

    result = ImportResult(catalog=merged)
    ids = {rec.sw_id for rec in merged}

    for portal in records:
        key = normalize_name(portal.software_name)
        if key in index:
            pos = index[key]
            rec = merged[pos]
            updates = {}
            if rec.homepage is None and portal.homepage is not None:
                updates["homepage"] = portal.homepage
            elif (rec.homepage is not None and portal.homepage is not None
                  and rec.homepage != portal.homepage):
                conflict = HomepageConflict(portal.portal_name, portal.software_name,
                                            rec.homepage, portal.homepage)
                result.conflicts.append(conflict)
                log.warning("homepage conflict for %s: keeping %s, ignoring %s",
                            rec.sw_id, rec.homepage, portal.homepage)
            if not rec.description and portal.description:
                updates["description"] = portal.description
            if updates:
                merged[pos] = replace(rec, **updates)
                result.enriched.append(rec.sw_id)
        else:
            sw_id = assign_persistent_id(portal.software_name, ids)
            ids.add(sw_id)
            new = SoftwareRecord(sw_id=sw_id, name=portal.software_name,
                                 homepage=portal.homepage,
                                 description=portal.description,
                                 provenance="PortalListed")
            merged.append(new)
            index[key] = len(merged) - 1
            result.created.append(sw_id)

    return result
