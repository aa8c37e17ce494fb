"""Read-only HTTP catalog service.

Endpoints serve search, browse, detail, and stats views directly from a
loaded snapshot; every response body is a pure function of (snapshot,
request), so identical requests return byte-identical bodies. The ranking
used by both search forms is `name_boost + ln(1 + total_references)`
where the boost is 3 for an exact name/alias match, 2 for a prefix, 1
for a substring, and 0 for keyword/description matches.
"""

from __future__ import annotations

import json
import math
import re
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, unquote, urlparse

from .records import CatalogError, SoftwareRecord
from .snapshot import IndexSnapshot, load_snapshot

DEFAULT_PER_PAGE = 20
MAX_PER_PAGE = 100
DEFAULT_PUB_LINK_TEMPLATE = "https://example.org/publications/{pub_id}"


class EmptyQuery(CatalogError):
    pass


class NoCriteria(CatalogError):
    pass


class NotFound(CatalogError):
    pass


class InvalidKey(CatalogError):
    pass


class InvalidParameter(CatalogError):
    pass


@dataclass
class SearchQuery:
    q: str | None = None
    name: str | None = None
    keyword: str | None = None
    msc_section: str | None = None
    author: str | None = None
    year_from: int | None = None
    year_to: int | None = None
    include_unfiltered_quality: bool = False
    page: int = 1
    per_page: int = DEFAULT_PER_PAGE

    def __post_init__(self):
        if not 1 <= self.per_page <= MAX_PER_PAGE:
            raise InvalidParameter(f"per_page must lie in [1, {MAX_PER_PAGE}]")
        if self.page < 1:
            raise InvalidParameter("page must be >= 1")

    def has_criteria(self) -> bool:
        return any(v is not None for v in (self.name, self.keyword, self.msc_section,
                                           self.author, self.year_from, self.year_to))


def _name_boost(q_folded: str, record: SoftwareRecord) -> int | None:
    """3 exact, 2 prefix, 1 substring over name and aliases; None if no match."""
    best = None
    for candidate in (record.name, *record.aliases):
        folded = candidate.casefold()
        if folded == q_folded:
            return 3
        if folded.startswith(q_folded):
            best = max(best or 0, 2)
        elif q_folded in folded:
            best = max(best or 0, 1)
    return best


def _rank(boost: int, total_references: int) -> float:
    return boost + math.log(1 + total_references)


def simple_search(q: str, snapshot: IndexSnapshot,
                  include_unfiltered_quality: bool = False) -> list[tuple[SoftwareRecord, float]]:
    """Free-text search over names, aliases, cloud keywords, descriptions."""
    q = (q or "").strip()
    if not q:
        raise EmptyQuery("query must be non-empty")
    folded = q.casefold()

    results = []
    for record in snapshot.catalog:
        profile = snapshot.profiles[record.sw_id]
        if not profile.quality_ok and not include_unfiltered_quality:
            continue
        boost = _name_boost(folded, record)
        if boost is None:
            in_cloud = any(folded in kw.casefold() for kw, _ in profile.keyword_cloud)
            if not in_cloud and folded not in record.description.casefold():
                continue
            boost = 0
        results.append((record, _rank(boost, profile.total_references)))
    results.sort(key=lambda item: (-item[1], item[0].name, item[0].sw_id))
    return results


def advanced_search(query: SearchQuery, snapshot: IndexSnapshot) -> list[tuple[SoftwareRecord, float]]:
    """Conjunction of the provided field filters, ranked like simple search."""
    if not query.has_criteria():
        raise NoCriteria("at least one filter must be provided")

    name_folded = query.name.casefold() if query.name else None
    keyword_folded = query.keyword.casefold() if query.keyword else None
    author_folded = query.author.casefold() if query.author else None

    results = []
    for record in snapshot.catalog:
        profile = snapshot.profiles[record.sw_id]
        if not profile.quality_ok and not query.include_unfiltered_quality:
            continue

        boost = 0
        if name_folded is not None:
            matched = _name_boost(name_folded, record)
            if matched is None:
                continue
            boost = matched
        if keyword_folded is not None:
            if not any(kw.casefold() == keyword_folded for kw, _ in profile.keyword_cloud):
                continue
        if query.msc_section is not None:
            if query.msc_section not in profile.msc_counts:
                continue
        if author_folded is not None:
            pubs = snapshot.index.publications_of(record.sw_id)
            authored = any(
                any(a.casefold() == author_folded
                    for a in snapshot.publications[pub_id].authors)
                for pub_id in pubs if pub_id in snapshot.publications
            )
            if not authored:
                continue
        if query.year_from is not None or query.year_to is not None:
            lo = query.year_from if query.year_from is not None else -10**9
            hi = query.year_to if query.year_to is not None else 10**9
            if not any(lo <= year <= hi for year in profile.references_by_year):
                continue

        results.append((record, _rank(boost, profile.total_references)))
    results.sort(key=lambda item: (-item[1], item[0].name, item[0].sw_id))
    return results


def get_detail(sw_id: str, snapshot: IndexSnapshot,
               link_template: str = DEFAULT_PUB_LINK_TEMPLATE,
               homepage_statuses: dict | None = None) -> dict:
    """Full record + profile + referencing publications for one package."""
    record = snapshot.by_sw_id.get(sw_id)
    if record is None:
        raise NotFound(f"no software with id {sw_id!r}")
    profile = snapshot.profiles[sw_id]

    pubs = []
    for pub_id in snapshot.index.publications_of(sw_id):
        meta = snapshot.publications.get(pub_id)
        if meta is not None:
            pubs.append(meta)
    pubs.sort(key=lambda m: (-m.year, m.pub_id))

    doc = record.to_mapping()
    doc["profile"] = {
        "keyword_cloud": [[kw, weight] for kw, weight in profile.keyword_cloud],
        "msc_distribution": profile.msc_distribution(),
        "references_by_year": {str(y): c for y, c in sorted(profile.references_by_year.items())},
        "total_references": profile.total_references,
        "quality_ok": profile.quality_ok,
        "similar": [
            {"sw_id": other, "name": snapshot.by_sw_id[other].name, "score": score}
            for other, score in profile.similar
        ],
    }
    doc["publications"] = [
        {"pub_id": m.pub_id, "title": m.title, "authors": list(m.authors),
         "year": m.year, "link": link_template.format(pub_id=m.pub_id)}
        for m in pubs
    ]
    if homepage_statuses and record.homepage in homepage_statuses:
        doc["homepage_status"] = homepage_statuses[record.homepage]
    return doc


_MSC_KEY_RE = re.compile(r"^[0-9]{2}$")
_ALPHA_KEY_RE = re.compile(r"^[0-9a-zA-Z]$")


def browse(dimension: str, key: str, snapshot: IndexSnapshot) -> list[SoftwareRecord]:
    """MscSection: quality-passing members by section count; AlphaPrefix: A-Z."""
    if dimension == "MscSection":
        if not _MSC_KEY_RE.match(key):
            raise InvalidKey(f"{key!r} is not a two-digit section")
        members = [
            (record, snapshot.profiles[record.sw_id].msc_counts[key])
            for record in snapshot.catalog
            if key in snapshot.profiles[record.sw_id].msc_counts
            and snapshot.profiles[record.sw_id].quality_ok
        ]
        members.sort(key=lambda item: (-item[1], item[0].name, item[0].sw_id))
        return [record for record, _count in members]
    if dimension == "AlphaPrefix":
        if not _ALPHA_KEY_RE.match(key):
            raise InvalidKey(f"{key!r} is not a single letter or digit")
        folded = key.casefold()
        members = [record for record in snapshot.catalog
                   if record.name.casefold().startswith(folded)]
        members.sort(key=lambda r: (r.name, r.sw_id))
        return members
    raise InvalidKey(f"unknown browse dimension {dimension!r}")


def stats(snapshot: IndexSnapshot) -> dict:
    section_totals: dict[str, int] = {}
    for profile in snapshot.profiles.values():
        for section, count in profile.msc_counts.items():
            section_totals[section] = section_totals.get(section, 0) + count
    top = sorted(section_totals.items(), key=lambda item: (-item[1], item[0]))
    return {
        "software_count": len(snapshot.catalog),
        "publication_count": len(snapshot.publications),
        "top_msc_sections": [{"section": s, "count": c} for s, c in top],
    }


def _record_item(record: SoftwareRecord, profile, score: float | None = None) -> dict:
    item = {
        "sw_id": record.sw_id,
        "name": record.name,
        "description": record.description,
        "homepage": record.homepage,
        "total_references": profile.total_references,
        "quality_ok": profile.quality_ok,
    }
    if score is not None:
        item["score"] = score
    return item


def _paginate(items: list, page: int, per_page: int) -> dict:
    start = (page - 1) * per_page
    return {
        "items": items[start:start + per_page],
        "page": page,
        "per_page": per_page,
        "total": len(items),
    }


class ServiceApp:
    """Request handling against one immutable snapshot."""

    def __init__(self, snapshot: IndexSnapshot,
                 link_template: str = DEFAULT_PUB_LINK_TEMPLATE,
                 homepage_statuses: dict | None = None):
        self.snapshot = snapshot
        self.link_template = link_template
        self.homepage_statuses = homepage_statuses or {}

    def handle(self, path: str, params: dict) -> tuple[int, dict]:
        try:
            return 200, self._route(path, params)
        except (EmptyQuery, NoCriteria, InvalidKey, InvalidParameter) as exc:
            return 400, {"error_code": type(exc).__name__, "message": str(exc)}
        except NotFound as exc:
            return 404, {"error_code": "NotFound", "message": str(exc)}
        except Exception as exc:  # pragma: no cover - defensive
            return 500, {"error_code": "InternalError", "message": str(exc)}

    def _route(self, path: str, params: dict) -> dict:
        snapshot = self.snapshot
        if path == "/api/health":
            return {
                "status": "ok",
                "built_at": snapshot.built_at,
                "format_version": snapshot.format_version,
                "software_count": len(snapshot.catalog),
                "publication_count": len(snapshot.publications),
            }
        if path == "/api/stats":
            return stats(snapshot)
        if path == "/api/software":
            query = _parse_query(params)
            ranked = simple_search(_single(params, "q"), snapshot,
                                   query.include_unfiltered_quality)
            items = [_record_item(r, snapshot.profiles[r.sw_id], s) for r, s in ranked]
            return _paginate(items, query.page, query.per_page)
        if path == "/api/software/advanced":
            query = _parse_query(params, advanced=True)
            ranked = advanced_search(query, snapshot)
            items = [_record_item(r, snapshot.profiles[r.sw_id], s) for r, s in ranked]
            return _paginate(items, query.page, query.per_page)
        match = re.match(r"^/api/software/([^/]+)/publications$", path)
        if match:
            query = _parse_query(params)
            sw_id = unquote(match.group(1))
            detail = get_detail(sw_id, snapshot, self.link_template)
            return _paginate(detail["publications"], query.page, query.per_page)
        match = re.match(r"^/api/software/([^/]+)$", path)
        if match:
            return get_detail(unquote(match.group(1)), snapshot, self.link_template,
                              self.homepage_statuses)
        match = re.match(r"^/api/browse/msc/([^/]+)$", path)
        if match:
            records = browse("MscSection", unquote(match.group(1)), snapshot)
            return {"items": [_record_item(r, snapshot.profiles[r.sw_id]) for r in records]}
        match = re.match(r"^/api/browse/alpha/([^/]+)$", path)
        if match:
            records = browse("AlphaPrefix", unquote(match.group(1)), snapshot)
            return {"items": [_record_item(r, snapshot.profiles[r.sw_id]) for r in records]}
        raise NotFound(f"no such endpoint: {path}")


def _single(params: dict, key: str, default: str | None = None) -> str | None:
    values = params.get(key)
    if not values:
        return default
    return values[-1]


def _parse_int(params: dict, key: str, default: int | None) -> int | None:
    raw = _single(params, key)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameter(f"{key} must be an integer") from None


def _parse_bool(params: dict, key: str) -> bool:
    raw = _single(params, key)
    if raw is None or raw == "" or raw.lower() in ("0", "false", "no"):
        return False
    if raw.lower() in ("1", "true", "yes"):
        return True
    raise InvalidParameter(f"{key} must be a boolean flag")


def _parse_query(params: dict, advanced: bool = False) -> SearchQuery:
    return SearchQuery(
        q=_single(params, "q"),
        name=_single(params, "name") if advanced else None,
        keyword=_single(params, "keyword") if advanced else None,
        msc_section=_single(params, "msc") if advanced else None,
        author=_single(params, "author") if advanced else None,
        year_from=_parse_int(params, "year_from", None) if advanced else None,
        year_to=_parse_int(params, "year_to", None) if advanced else None,
        include_unfiltered_quality=_parse_bool(params, "include_unfiltered_quality"),
        page=_parse_int(params, "page", 1),
        per_page=_parse_int(params, "per_page", DEFAULT_PER_PAGE),
    )


class _Handler(BaseHTTPRequestHandler):
    app: ServiceApp = None  # set by make_server

    def do_GET(self):
        parsed = urlparse(self.path)
        params = parse_qs(parsed.query, keep_blank_values=True)
        status, payload = self.app.handle(parsed.path, params)
        body = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, fmt, *args):  # quiet by default
        pass


def make_server(snapshot: IndexSnapshot, host: str = "127.0.0.1", port: int = 0,
                link_template: str = DEFAULT_PUB_LINK_TEMPLATE,
                homepage_statuses: dict | None = None) -> ThreadingHTTPServer:
    """Build (but do not start) an HTTP server bound to host:port."""
    app = ServiceApp(snapshot, link_template, homepage_statuses)
    handler = type("BoundHandler", (_Handler,), {"app": app})
    return ThreadingHTTPServer((host, port), handler)


def serve(snapshot_path, bind: str = "127.0.0.1:8080",
          link_template: str = DEFAULT_PUB_LINK_TEMPLATE,
          history_path=None) -> ThreadingHTTPServer:
    """Load + validate a snapshot and return a ready-to-run server."""
    snapshot = load_snapshot(snapshot_path)
    statuses = None
    if history_path is not None:
        statuses = {}
        with open(history_path, "r", encoding="utf-8") as fh:
            for line in fh:
                parts = line.rstrip("\n").split("\t")
                if len(parts) == 7:
                    statuses[parts[1]] = {"outcome": parts[2], "checked_at": parts[0]}
    host, _, port = bind.partition(":")
    return make_server(snapshot, host or "127.0.0.1", int(port or 0),
                       link_template, statuses)


def run_in_thread(server: ThreadingHTTPServer) -> threading.Thread:
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return thread
