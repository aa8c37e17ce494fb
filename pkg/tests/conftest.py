from __future__ import annotations

import pytest

from swcatalog import extraction, fixtures, ingest, matching, profiles
from swcatalog.records import Corpus


@pytest.fixture(scope="session")
def demo_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("demo")
    fixtures.write_fixture(out, seed=fixtures.DEFAULT_SEED)
    return out


@pytest.fixture(scope="session")
def demo_corpus(demo_dir) -> Corpus:
    return ingest.load_corpus(demo_dir / "corpus.jsonl")


@pytest.fixture(scope="session")
def demo_manifest(demo_dir) -> dict:
    import json

    with open(demo_dir / "manifest.json", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def demo_catalog(demo_dir, demo_corpus):
    """Curated catalog with portal records merged in."""
    hits = extraction.extract_corpus(demo_corpus)
    candidates = extraction.merge_candidates(hits)
    decisions = extraction.load_curation_file(demo_dir / "curation.tsv")
    curated = extraction.apply_curation(candidates, decisions)
    portals = ingest.load_portal_records(demo_dir / "portals.jsonl")
    return ingest.import_portal_records(portals, curated.accepted).catalog


@pytest.fixture(scope="session")
def demo_index(demo_corpus, demo_catalog):
    lexicon = matching.compile_lexicon(demo_catalog)
    return matching.build_mention_index(demo_corpus, lexicon)


@pytest.fixture(scope="session")
def demo_profiles(demo_catalog, demo_index, demo_corpus):
    return profiles.build_profiles(demo_catalog, demo_index, demo_corpus)


# ---------------------------------------------------------------------------
# acceptance reporting: one PASS/FAIL line per criterion at the end of the run

_ACCEPTANCE_RESULTS: dict[str, str] = {}


def record_acceptance(criterion: str, passed: bool) -> None:
    _ACCEPTANCE_RESULTS[criterion] = "PASS" if passed else "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        record_acceptance(marker.args[0], report.passed)


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): ties a test to one acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for criterion in sorted(_ACCEPTANCE_RESULTS):
        verdict = _ACCEPTANCE_RESULTS[criterion]
        terminalreporter.write_line(f"{criterion}: {verdict}")
