"""Homepage liveness checking.

A check issues a header request first (falling back to a full fetch when
the server rejects the method), follows up to five redirects, and
classifies the final response. Transient failures (timeout, DNS,
5xx/connection trouble) are retried with doubling backoff. A sweep runs
checks over the whole catalog through a bounded worker pool while never
keeping two requests in flight against the same host, and appends every
outcome to a tab-separated history file so the next sweep can tell which
URLs died since last time.
"""

from __future__ import annotations

import socket
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from urllib.parse import urljoin, urlparse

import requests

from .records import CatalogError, SoftwareRecord

OUTCOME_ALIVE = "Alive"
OUTCOME_REDIRECTED = "Redirected"
OUTCOME_CLIENT_ERROR = "ClientError"
OUTCOME_SERVER_ERROR = "ServerError"
OUTCOME_TIMEOUT = "Timeout"
OUTCOME_DNS_FAILURE = "DnsFailure"
OUTCOME_INVALID_URL = "InvalidUrl"

ALIVE_OUTCOMES = frozenset({OUTCOME_ALIVE, OUTCOME_REDIRECTED})
RETRYABLE_OUTCOMES = frozenset({OUTCOME_TIMEOUT, OUTCOME_DNS_FAILURE, OUTCOME_SERVER_ERROR})

REDIRECT_LIMIT = 5
MAX_RETRIES = 5


class StoreUnavailable(CatalogError):
    pass


@dataclass(frozen=True)
class CheckPolicy:
    timeout: float = 10.0
    retries: int = 2
    backoff_base: float = 1.0
    global_parallelism: int = 8
    user_agent: str = "swcatalog-linkcheck/0.1"
    # per-host parallelism is fixed at 1 and not configurable

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if not 0 <= self.retries <= MAX_RETRIES:
            raise ValueError(f"retries must lie in [0, {MAX_RETRIES}]")
        if self.global_parallelism < 1:
            raise ValueError("global_parallelism must be >= 1")


@dataclass(frozen=True)
class LinkStatus:
    url: str
    checked_at: str
    outcome: str
    code: int | None
    final_url: str | None
    latency: float
    attempts: int

    def history_line(self) -> str:
        code = str(self.code) if self.code is not None else "-"
        final = self.final_url if self.final_url else "-"
        return (f"{self.checked_at}\t{self.url}\t{self.outcome}\t{code}\t"
                f"{final}\t{int(self.latency * 1000)}\t{self.attempts}")


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _is_dns_failure(exc: BaseException) -> bool:
    seen = set()
    stack = [exc]
    while stack:
        err = stack.pop()
        if id(err) in seen or err is None:
            continue
        seen.add(id(err))
        if isinstance(err, socket.gaierror):
            return True
        stack.extend([err.__cause__, err.__context__])
        stack.extend(a for a in getattr(err, "args", ()) if isinstance(a, BaseException))
    return "NameResolutionError" in repr(exc) or "getaddrinfo" in repr(exc)


class _HostLocks:
    """One mutex per hostname; politeness across worker threads."""

    def __init__(self):
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def lock_for(self, host: str) -> threading.Lock:
        with self._guard:
            if host not in self._locks:
                self._locks[host] = threading.Lock()
            return self._locks[host]


def _attempt(url: str, policy: CheckPolicy, locks: _HostLocks | None):
    """One full try: header request, method fallback, redirect chase.

    Returns (outcome, code, final_url). The request budget per attempt is
    REDIRECT_LIMIT + 1, with a method fallback consuming budget too.
    """
    method = "HEAD"
    current = url
    redirects = 0
    budget = REDIRECT_LIMIT + 1
    headers = {"User-Agent": policy.user_agent}

    while budget > 0:
        budget -= 1
        host = (urlparse(current).hostname or "").lower()
        lock = locks.lock_for(host) if locks is not None else None
        try:
            if lock is not None:
                lock.acquire()
            try:
                response = requests.request(method, current, timeout=policy.timeout,
                                            allow_redirects=False, headers=headers)
            finally:
                if lock is not None:
                    lock.release()
        except requests.exceptions.Timeout:
            return OUTCOME_TIMEOUT, None, None
        except requests.exceptions.RequestException as exc:
            if _is_dns_failure(exc):
                return OUTCOME_DNS_FAILURE, None, None
            # connection refused/reset and kindred transport failures:
            # no HTTP status exists, so classify as a retryable 599
            return OUTCOME_SERVER_ERROR, 599, None

        code = response.status_code
        if code in (405, 501) and method == "HEAD":
            method = "GET"
            continue
        if 300 <= code < 400:
            location = response.headers.get("Location")
            if location and redirects < REDIRECT_LIMIT and budget > 0:
                current = urljoin(current, location)
                redirects += 1
                continue
            return OUTCOME_CLIENT_ERROR, code, None
        if 200 <= code < 300:
            if redirects > 0 and current != url:
                return OUTCOME_REDIRECTED, code, current
            return OUTCOME_ALIVE, code, None
        if 400 <= code < 500:
            return OUTCOME_CLIENT_ERROR, code, None
        if 500 <= code < 600:
            return OUTCOME_SERVER_ERROR, code, None
        # 1xx and other oddities: treat as a server-side protocol problem
        return OUTCOME_SERVER_ERROR, code, None

    return OUTCOME_CLIENT_ERROR, None, None


def check_url(url: str, policy: CheckPolicy | None = None,
              locks: _HostLocks | None = None,
              clock=_utc_now) -> LinkStatus:
    """Classify one URL under the given policy; never raises."""
    policy = policy or CheckPolicy()

    parsed = urlparse(url)
    if parsed.scheme not in ("http", "https") or not parsed.netloc:
        return LinkStatus(url=url, checked_at=clock(), outcome=OUTCOME_INVALID_URL,
                          code=None, final_url=None, latency=0.0, attempts=1)

    attempts = 0
    while True:
        attempts += 1
        started = time.monotonic()
        outcome, code, final_url = _attempt(url, policy, locks)
        latency = time.monotonic() - started
        if outcome in RETRYABLE_OUTCOMES and attempts <= policy.retries:
            time.sleep(policy.backoff_base * (2 ** (attempts - 1)))
            continue
        return LinkStatus(url=url, checked_at=clock(), outcome=outcome, code=code,
                          final_url=final_url, latency=latency, attempts=attempts)


class HistoryStore:
    """Append-only link-status history.

    One line per check:
    `checked_at url outcome code_or_dash final_url_or_dash latency_ms attempts`
    """

    def __init__(self, path):
        self.path = path
        self._lock = threading.Lock()

    def probe(self) -> None:
        try:
            with open(self.path, "a", encoding="utf-8"):
                pass
        except OSError as exc:
            raise StoreUnavailable(f"cannot append to {self.path}: {exc}") from exc

    def append(self, status: LinkStatus) -> None:
        line = status.history_line() + "\n"
        with self._lock:
            try:
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(line)
            except OSError as exc:
                raise StoreUnavailable(f"cannot append to {self.path}: {exc}") from exc

    def last_outcomes(self) -> dict[str, str]:
        """Latest recorded outcome per URL (empty when no history yet)."""
        last: dict[str, str] = {}
        try:
            with open(self.path, "r", encoding="utf-8") as fh:
                for line in fh:
                    parts = line.rstrip("\n").split("\t")
                    if len(parts) == 7:
                        last[parts[1]] = parts[2]
        except FileNotFoundError:
            return {}
        except OSError as exc:
            raise StoreUnavailable(f"cannot read {self.path}: {exc}") from exc
        return last


@dataclass
class SweepReport:
    checked: int = 0
    skipped: int = 0
    counts: dict[str, int] = field(default_factory=dict)
    newly_dead: list[str] = field(default_factory=list)
    statuses: list[LinkStatus] = field(default_factory=list)


def run_sweep(catalog: list[SoftwareRecord], policy: CheckPolicy,
              store: HistoryStore, clock=_utc_now) -> SweepReport:
    """Check every record with a homepage; append results to the store."""
    store.probe()
    previous = store.last_outcomes()

    report = SweepReport()
    targets = []
    for record in catalog:
        if record.homepage:
            targets.append(record.homepage)
        else:
            report.skipped += 1

    locks = _HostLocks()
    results: dict[int, LinkStatus] = {}

    def worker(pos: int, url: str) -> None:
        results[pos] = check_url(url, policy, locks=locks, clock=clock)

    with ThreadPoolExecutor(max_workers=policy.global_parallelism) as pool:
        futures = [pool.submit(worker, pos, url) for pos, url in enumerate(targets)]
        for future in futures:
            future.result()

    for pos in range(len(targets)):
        status = results[pos]
        store.append(status)
        report.statuses.append(status)
        report.checked += 1
        report.counts[status.outcome] = report.counts.get(status.outcome, 0) + 1
        was_alive = previous.get(status.url) in ALIVE_OUTCOMES
        if was_alive and status.outcome not in ALIVE_OUTCOMES:
            report.newly_dead.append(status.url)

    return report
