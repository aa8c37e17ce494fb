"""Domain records shared across the pipeline.

Three kinds of input records (publications, curated software entries,
portal listings) plus the validation rules they must satisfy before any
downstream stage will touch them.
"""

from __future__ import annotations

import datetime
import re
import unicodedata
from dataclasses import dataclass, fields

# Two digits + uppercase letter + two digits, or the "xx" / "-XX"
# wildcard forms ("13P10", "65Fxx", "68-XX").
MSC_CODE_RE = re.compile(r"^[0-9]{2}(?:[A-Z](?:[0-9]{2}|xx)|-XX)$")

SW_ID_RE = re.compile(r"^swm:[a-z0-9]+(?:-[a-z0-9]+)*$")

MIN_YEAR = 1800

PUBLICATION_SOURCES = ("Reviewed", "Proceedings", "Report")
PROVENANCES = ("PublicationDerived", "PortalListed", "WebHeuristic")


class CatalogError(Exception):
    """Base class for errors raised by this package."""


class UnreadableFile(CatalogError):
    pass


class EmptySlug(CatalogError):
    pass


@dataclass(frozen=True)
class MalformedRecord:
    """One rejected input line and why it was rejected."""

    line_no: int
    reason: str


class CorpusFormatError(CatalogError):
    """Raised in strict mode when any input line fails validation."""

    def __init__(self, path: str, problems: list[MalformedRecord]):
        self.path = path
        self.problems = problems
        preview = "; ".join(f"line {p.line_no}: {p.reason}" for p in problems[:5])
        more = f" (+{len(problems) - 5} more)" if len(problems) > 5 else ""
        super().__init__(f"{path}: {len(problems)} malformed record(s): {preview}{more}")


def ascii_fold(text: str) -> str:
    """Drop diacritics and any character without an ASCII decomposition."""
    return unicodedata.normalize("NFKD", text).encode("ascii", "ignore").decode("ascii")


def normalize_name(name: str) -> str:
    """Matching key for software names: fold, lowercase, collapse whitespace."""
    return " ".join(ascii_fold(name).lower().split())


def max_valid_year() -> int:
    return datetime.date.today().year + 1


@dataclass(frozen=True)
class PublicationRecord:
    pub_id: str
    title: str
    abstract_text: str = ""
    keywords: tuple[str, ...] = ()
    msc_codes: tuple[str, ...] = ()
    year: int = 0
    authors: tuple[str, ...] = ()
    peer_reviewed: bool = False
    source: str = "Reviewed"

    @classmethod
    def from_mapping(cls, data: dict) -> "PublicationRecord":
        if not isinstance(data, dict):
            raise ValueError("record is not a key/value object")
        unknown = set(data) - _PUB_FIELD_NAMES
        if unknown:
            raise ValueError(f"unknown field(s): {', '.join(sorted(unknown))}")

        pub_id = _req_str(data, "pub_id")
        title = _req_str(data, "title", allow_empty=True)
        abstract = _opt_str(data, "abstract_text", "")

        keywords = []
        for kw in _str_list(data, "keywords"):
            kw = kw.strip()
            if not kw:
                raise ValueError("keywords: empty after trimming")
            if kw not in keywords:
                keywords.append(kw)

        msc_codes = _str_list(data, "msc_codes")
        for code in msc_codes:
            if not MSC_CODE_RE.match(code):
                raise ValueError(f"msc_codes: {code!r} does not match the MSC grammar")

        year = data.get("year")
        if not isinstance(year, int) or isinstance(year, bool):
            raise ValueError("year: integer required")
        if not MIN_YEAR <= year <= max_valid_year():
            raise ValueError("year out of range")

        authors = _str_list(data, "authors")
        peer_reviewed = data.get("peer_reviewed", False)
        if not isinstance(peer_reviewed, bool):
            raise ValueError("peer_reviewed: boolean required")
        source = _opt_str(data, "source", "Reviewed")
        if source not in PUBLICATION_SOURCES:
            raise ValueError(f"source: must be one of {PUBLICATION_SOURCES}")

        return cls(pub_id=pub_id, title=title, abstract_text=abstract,
                   keywords=tuple(keywords), msc_codes=tuple(msc_codes), year=year,
                   authors=tuple(authors), peer_reviewed=peer_reviewed, source=source)

    def to_mapping(self) -> dict:
        return {
            "pub_id": self.pub_id,
            "title": self.title,
            "abstract_text": self.abstract_text,
            "keywords": list(self.keywords),
            "msc_codes": list(self.msc_codes),
            "year": self.year,
            "authors": list(self.authors),
            "peer_reviewed": self.peer_reviewed,
            "source": self.source,
        }


@dataclass(frozen=True)
class SoftwareRecord:
    sw_id: str
    name: str
    aliases: tuple[str, ...] = ()
    homepage: str | None = None
    description: str = ""
    version: str | None = None
    license: str | None = None
    programming_languages: tuple[str, ...] = ()
    dependencies: tuple[str, ...] = ()
    provenance: str = "PublicationDerived"

    def __post_init__(self):
        if not SW_ID_RE.match(self.sw_id):
            raise ValueError(f"sw_id {self.sw_id!r} is not a valid persistent id")
        if not self.name.strip():
            raise ValueError("name must be non-empty")
        if self.name in self.aliases:
            raise ValueError("name must not be repeated in aliases")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"provenance: must be one of {PROVENANCES}")

    @classmethod
    def from_mapping(cls, data: dict) -> "SoftwareRecord":
        if not isinstance(data, dict):
            raise ValueError("record is not a key/value object")
        unknown = set(data) - _SW_FIELD_NAMES
        if unknown:
            raise ValueError(f"unknown field(s): {', '.join(sorted(unknown))}")
        return cls(
            sw_id=_req_str(data, "sw_id"),
            name=_req_str(data, "name"),
            aliases=tuple(_str_list(data, "aliases")),
            homepage=_opt_str(data, "homepage", None),
            description=_opt_str(data, "description", ""),
            version=_opt_str(data, "version", None),
            license=_opt_str(data, "license", None),
            programming_languages=tuple(_str_list(data, "programming_languages")),
            dependencies=tuple(_str_list(data, "dependencies")),
            provenance=_opt_str(data, "provenance", "PublicationDerived"),
        )

    def to_mapping(self) -> dict:
        out: dict = {"sw_id": self.sw_id, "name": self.name, "aliases": list(self.aliases)}
        if self.homepage is not None:
            out["homepage"] = self.homepage
        out["description"] = self.description
        if self.version is not None:
            out["version"] = self.version
        if self.license is not None:
            out["license"] = self.license
        out["programming_languages"] = list(self.programming_languages)
        out["dependencies"] = list(self.dependencies)
        out["provenance"] = self.provenance
        return out


@dataclass(frozen=True)
class PortalRecord:
    portal_name: str
    software_name: str
    homepage: str | None = None
    description: str = ""

    def __post_init__(self):
        if not self.portal_name.strip():
            raise ValueError("portal_name must be non-empty")
        if not self.software_name.strip():
            raise ValueError("software_name must be non-empty")

    @classmethod
    def from_mapping(cls, data: dict) -> "PortalRecord":
        if not isinstance(data, dict):
            raise ValueError("record is not a key/value object")
        unknown = set(data) - {"portal_name", "software_name", "homepage", "description"}
        if unknown:
            raise ValueError(f"unknown field(s): {', '.join(sorted(unknown))}")
        return cls(
            portal_name=_req_str(data, "portal_name"),
            software_name=_req_str(data, "software_name"),
            homepage=_opt_str(data, "homepage", None),
            description=_opt_str(data, "description", ""),
        )

    def to_mapping(self) -> dict:
        out: dict = {"portal_name": self.portal_name, "software_name": self.software_name}
        if self.homepage is not None:
            out["homepage"] = self.homepage
        out["description"] = self.description
        return out


class Corpus:
    """Validated, immutable collection of publication records."""

    def __init__(self, records: list[PublicationRecord]):
        self.records: tuple[PublicationRecord, ...] = tuple(records)
        self.by_id: dict[str, PublicationRecord] = {}
        for rec in self.records:
            if rec.pub_id in self.by_id:
                raise ValueError(f"duplicate pub_id {rec.pub_id!r}")
            self.by_id[rec.pub_id] = rec

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __contains__(self, pub_id: str) -> bool:
        return pub_id in self.by_id


def _req_str(data: dict, key: str, allow_empty: bool = False) -> str:
    value = data.get(key)
    if not isinstance(value, str):
        raise ValueError(f"{key}: string required")
    if not allow_empty and not value.strip():
        raise ValueError(f"{key}: must be non-empty")
    return value


def _opt_str(data: dict, key: str, default):
    value = data.get(key, default)
    if value is default:
        return default
    if not isinstance(value, str):
        raise ValueError(f"{key}: string required")
    return value


def _str_list(data: dict, key: str) -> list[str]:
    value = data.get(key, [])
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise ValueError(f"{key}: list of strings required")
    return value


_PUB_FIELD_NAMES = {f.name for f in fields(PublicationRecord)}
_SW_FIELD_NAMES = {f.name for f in fields(SoftwareRecord)}
