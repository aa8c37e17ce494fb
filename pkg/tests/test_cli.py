import json

import pytest

from swcatalog.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def kv(out):
    pairs = {}
    for line in out.splitlines():
        if "=" in line:
            key, _, value = line.partition("=")
            pairs[key] = value
    return pairs


@pytest.fixture(scope="module")
def pipeline_dir(tmp_path_factory):
    """demo -> extract -> curate -> import-portals -> build, via the CLI."""
    work = tmp_path_factory.mktemp("cli-pipeline")
    assert main(["demo", "--out", str(work), "--seed", "42"]) == 0
    assert main(["extract", "--corpus", str(work / "corpus.jsonl"),
                 "--out", str(work / "worklist.tsv")]) == 0
    assert main(["curate", "--corpus", str(work / "corpus.jsonl"),
                 "--decisions", str(work / "curation.tsv"),
                 "--out", str(work / "catalog.jsonl")]) == 0
    assert main(["import-portals", "--catalog", str(work / "catalog.jsonl"),
                 "--portals", str(work / "portals.jsonl"),
                 "--out", str(work / "catalog_full.jsonl")]) == 0
    assert main(["build", "--corpus", str(work / "corpus.jsonl"),
                 "--catalog", str(work / "catalog_full.jsonl"),
                 "--out", str(work / "snapshot.json"),
                 "--built-at", "2026-01-01T00:00:00Z"]) == 0
    return work


def test_demo_writes_fixture_files(tmp_path, capsys):
    code, out, _ = run(capsys, "demo", "--out", str(tmp_path), "--seed", "7")
    assert code == 0
    for name in ("corpus.jsonl", "portals.jsonl", "curation.tsv", "manifest.json"):
        assert (tmp_path / name).is_file()
    assert kv(out)["publications"] == "200"


def test_ingest_reports_counts(pipeline_dir, capsys):
    code, out, _ = run(capsys, "ingest", "--corpus",
                       str(pipeline_dir / "corpus.jsonl"))
    assert code == 0
    pairs = kv(out)
    assert pairs["records"] == "200"
    assert pairs["mode"] == "strict"


def test_ingest_strict_fails_on_bad_line(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"pub_id": "p1", "title": "t", "year": 1700}\n')
    code, _, err = run(capsys, "ingest", "--corpus", str(bad))
    assert code == 1
    assert "year out of range" in err


def test_ingest_lenient_skips(tmp_path, capsys):
    mixed = tmp_path / "mixed.jsonl"
    good = {"pub_id": "p1", "title": "t", "year": 2000}
    bad = {"pub_id": "p2", "title": "t", "year": 1700}
    mixed.write_text(json.dumps(good) + "\n" + json.dumps(bad) + "\n")
    code, out, err = run(capsys, "ingest", "--corpus", str(mixed), "--lenient")
    assert code == 0
    pairs = kv(out)
    assert pairs["records"] == "1" and pairs["rejected"] == "1"
    assert "year out of range" in err


def test_worklist_sorted_by_score(pipeline_dir):
    lines = (pipeline_dir / "worklist.tsv").read_text().splitlines()
    scores = [float(line.split("\t")[1]) for line in lines]
    assert scores == sorted(scores, reverse=True)
    assert len(lines) >= 25


def test_curate_unknown_name_warns_but_succeeds(pipeline_dir, tmp_path, capsys):
    decisions = tmp_path / "cur.tsv"
    decisions.write_text("no-such-candidate\taccept\tGhost\n")
    code, out, err = run(capsys, "curate",
                         "--corpus", str(pipeline_dir / "corpus.jsonl"),
                         "--decisions", str(decisions),
                         "--out", str(tmp_path / "catalog.jsonl"))
    assert code == 0
    assert kv(out)["warnings"] == "1"
    assert "no candidate named" in err


def test_match_dump_format(pipeline_dir, tmp_path, capsys):
    dump = tmp_path / "mentions.tsv"
    code, out, _ = run(capsys, "match",
                       "--corpus", str(pipeline_dir / "corpus.jsonl"),
                       "--catalog", str(pipeline_dir / "catalog_full.jsonl"),
                       "--dump", str(dump))
    assert code == 0
    lines = dump.read_text().splitlines()
    assert int(kv(out)["mentions"]) == len(lines)
    for line in lines[:20]:
        pub_id, sw_id, field, start, end = line.split("\t")
        assert field in ("Title", "Abstract")
        assert int(start) < int(end)


def test_export_round_trip(pipeline_dir, tmp_path, capsys):
    code, out, _ = run(capsys, "export",
                       "--snapshot", str(pipeline_dir / "snapshot.json"),
                       "--catalog-out", str(tmp_path / "catalog.jsonl"),
                       "--profiles-out", str(tmp_path / "profiles.jsonl"))
    assert code == 0
    catalog_lines = (tmp_path / "catalog.jsonl").read_text().splitlines()
    profile_lines = (tmp_path / "profiles.jsonl").read_text().splitlines()
    assert len(catalog_lines) == len(profile_lines) == 27
    first = json.loads(profile_lines[0])
    assert {"sw_id", "keyword_cloud", "msc_counts", "references_by_year",
            "total_references", "quality_ok", "similar"} <= set(first)


def test_config_file_supplies_paths(pipeline_dir, tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"corpus": str(pipeline_dir / "corpus.jsonl")}))
    code, out, _ = run(capsys, "--config", str(config), "ingest")
    assert code == 0
    assert kv(out)["records"] == "200"


def test_unknown_subcommand_exits_1(capsys):
    assert main(["frobnicate"]) == 1
    assert main([]) == 1


def test_unknown_flag_exits_1(capsys):
    assert main(["ingest", "--no-such-flag"]) == 1


def test_missing_input_exits_1(tmp_path, capsys):
    code, _, err = run(capsys, "ingest", "--corpus", str(tmp_path / "ghost.jsonl"))
    assert code == 1
    assert "missing input" in err


def test_check_links_requires_history(pipeline_dir, capsys):
    code, _, err = run(capsys, "check-links",
                       "--catalog", str(pipeline_dir / "catalog_full.jsonl"))
    assert code == 1
    assert "history" in err
