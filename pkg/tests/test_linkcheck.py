import threading
import time

import pytest

from swcatalog.linkcheck import (
    CheckPolicy,
    HistoryStore,
    StoreUnavailable,
    check_url,
    run_sweep,
)
from swcatalog.records import SoftwareRecord

from linkstub import scripted_server

FAST = dict(backoff_base=0.01)


@pytest.fixture(scope="module")
def stub():
    server = scripted_server()
    yield server
    server.stop()


def policy(**kw):
    merged = dict(timeout=3.0, retries=2, **FAST)
    merged.update(kw)
    return CheckPolicy(**merged)


def test_alive(stub):
    status = check_url(stub.url("/ok"), policy())
    assert status.outcome == "Alive"
    assert status.code == 200
    assert status.attempts == 1
    assert status.final_url is None


def test_redirect_chain(stub):
    status = check_url(stub.url("/hop2"), policy())
    assert status.outcome == "Redirected"
    assert status.final_url == stub.url("/ok")
    assert status.attempts == 1


def test_client_error(stub):
    status = check_url(stub.url("/missing"), policy())
    assert status.outcome == "ClientError"
    assert status.code == 404
    assert status.attempts == 1  # 4xx is final, no retry


def test_timeout_with_retries(stub):
    stub.httpd.flags["slow_delay"] = 1.0
    status = check_url(stub.url("/slow"), policy(timeout=0.2, retries=2))
    assert status.outcome == "Timeout"
    assert status.attempts == 3


def test_server_error_retried_until_success(stub):
    status = check_url(stub.url("/flaky"), policy(retries=2))
    assert status.outcome == "Alive"
    assert status.attempts == 3


def test_head_fallback_on_405(stub):
    stub.reset_counters()
    status = check_url(stub.url("/head-rejected"), policy())
    assert status.outcome == "Alive"
    methods = [m for m, p in stub.request_log if p == "/head-rejected"]
    assert methods == ["HEAD", "GET"]


def test_head_fallback_on_501(stub):
    stub.reset_counters()
    status = check_url(stub.url("/head-unimplemented"), policy())
    assert status.outcome == "Alive"
    methods = [m for m, p in stub.request_log if p == "/head-unimplemented"]
    assert methods == ["HEAD", "GET"]


def test_redirect_loop_bounded(stub):
    stub.reset_counters()
    status = check_url(stub.url("/loop"), policy(retries=2))
    assert status.outcome == "ClientError"
    assert status.code == 301
    requests_made = len([1 for _, p in stub.request_log if p == "/loop"])
    assert requests_made <= (2 + 1) * (5 + 1)


def test_dns_failure():
    status = check_url("http://nope.invalid/", policy(retries=1))
    assert status.outcome == "DnsFailure"
    assert status.attempts == 2  # DNS failures are retryable


def test_invalid_url():
    for url in ("not-a-url", "ftp://example.org/x", "http://"):
        status = check_url(url, policy())
        assert status.outcome == "InvalidUrl"
        assert status.attempts == 1


def test_classification_deterministic(stub):
    first = check_url(stub.url("/missing"), policy())
    second = check_url(stub.url("/missing"), policy())
    assert (first.outcome, first.code) == (second.outcome, second.code)


def test_policy_validation():
    with pytest.raises(ValueError):
        CheckPolicy(timeout=0)
    with pytest.raises(ValueError):
        CheckPolicy(retries=6)
    with pytest.raises(ValueError):
        CheckPolicy(global_parallelism=0)


# --- history store -----------------------------------------------------------

def test_history_line_format(stub, tmp_path):
    store = HistoryStore(tmp_path / "history.tsv")
    status = check_url(stub.url("/ok"), policy())
    store.append(status)
    line = (tmp_path / "history.tsv").read_text().strip()
    fields = line.split("\t")
    assert len(fields) == 7
    assert fields[1] == stub.url("/ok")
    assert fields[2] == "Alive"
    assert fields[3] == "200"
    assert fields[4] == "-"
    assert fields[6] == "1"


def test_store_unavailable(tmp_path):
    store = HistoryStore(tmp_path / "no-such-dir" / "history.tsv")
    with pytest.raises(StoreUnavailable):
        store.probe()


def catalog_for(stub, paths):
    records = []
    for i, path in enumerate(paths):
        homepage = stub.url(path) if path else None
        records.append(SoftwareRecord(sw_id=f"swm:s{i}", name=f"S{i}",
                                      homepage=homepage))
    return records


def test_sweep_counts_and_skips(stub, tmp_path):
    store = HistoryStore(tmp_path / "history.tsv")
    catalog = catalog_for(stub, ["/ok", "/missing", None])
    report = run_sweep(catalog, policy(), store)
    assert report.checked == 2
    assert report.skipped == 1
    assert report.counts == {"Alive": 1, "ClientError": 1}
    assert report.newly_dead == []
    lines = (tmp_path / "history.tsv").read_text().splitlines()
    assert len(lines) == 2


def test_sweep_newly_dead(stub, tmp_path):
    store = HistoryStore(tmp_path / "history.tsv")
    catalog = catalog_for(stub, ["/mortal"])
    stub.httpd.flags["mortal_dead"] = False
    first = run_sweep(catalog, policy(), store)
    assert first.newly_dead == []
    stub.httpd.flags["mortal_dead"] = True
    second = run_sweep(catalog, policy(), store)
    assert second.newly_dead == [stub.url("/mortal")]
    # a third dead sweep is not "newly" dead
    third = run_sweep(catalog, policy(), store)
    assert third.newly_dead == []


def test_sweep_aborts_when_store_unavailable(stub, tmp_path):
    stub.reset_counters()
    store = HistoryStore(tmp_path / "missing-dir" / "history.tsv")
    with pytest.raises(StoreUnavailable):
        run_sweep(catalog_for(stub, ["/ok"]), policy(), store)
    assert stub.request_log == []  # nothing was fetched


def test_per_host_serialization(tmp_path):
    # dedicated stub: other tests' abandoned (timed-out) handlers must not
    # pollute the concurrency gauge
    own = scripted_server()
    try:
        store = HistoryStore(tmp_path / "history.tsv")
        catalog = catalog_for(own, ["/busy?n=%d" % i for i in range(6)])
        report = run_sweep(catalog, policy(global_parallelism=4), store)
        assert report.checked == 6
        assert own.max_active == 1  # never two in-flight requests on one host
    finally:
        own.stop()


def test_cross_host_parallelism(stub, tmp_path):
    # same stub reachable under two hostnames: these may overlap
    stub.reset_counters()
    store = HistoryStore(tmp_path / "history.tsv")
    catalog = [
        SoftwareRecord(sw_id="swm:a", name="A", homepage=stub.url("/busy", host="127.0.0.1")),
        SoftwareRecord(sw_id="swm:b", name="B", homepage=stub.url("/busy", host="localhost")),
    ]
    started = time.monotonic()
    run_sweep(catalog, policy(global_parallelism=2), store)
    elapsed = time.monotonic() - started
    assert elapsed < 2.0  # sanity: pool actually ran both


def test_check_url_threadsafe_for_distinct_hosts(stub):
    # concurrent checks against distinct hostnames never raise
    outcomes = []

    def run(host):
        outcomes.append(check_url(stub.url("/ok", host=host), policy()).outcome)

    threads = [threading.Thread(target=run, args=(h,))
               for h in ("127.0.0.1", "localhost")]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert outcomes == ["Alive", "Alive"]
