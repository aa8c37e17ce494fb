"""Command-line pipeline driver.

One subcommand per stage, file handoffs in between, so automatic steps
and manual curation checkpoints stay separate:

    demo            write the seeded synthetic fixture corpus
    ingest          validate a corpus and report stats
    extract         mine titles into a scored curation worklist
    curate          apply curation decisions, emit the catalog
    import-portals  merge portal listings into the catalog
    match           build the mention index, optionally dump mentions
    build           derive profiles and write the index snapshot
    check-links     sweep homepages, append to the status history
    serve           run the HTTP API from a snapshot
    export          re-emit catalog and profiles as line-delimited files

Every stage prints machine-readable `key=value` summary lines. Exit
codes: 0 success, 1 input error, 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import extraction, fixtures, ingest, linkcheck, matching, profiles, service, snapshot
from .records import CatalogError, CorpusFormatError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _emit(**pairs) -> None:
    for key, value in pairs.items():
        print(f"{key}={value}")


def _require_files(*paths) -> None:
    missing = [str(p) for p in paths if p is not None and not Path(p).is_file()]
    if missing:
        raise CatalogError(f"missing input file(s): {', '.join(missing)}")


def _load_config(path) -> dict:
    if path is None:
        return {}
    _require_files(path)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _opt(args, config, key, default=None):
    value = getattr(args, key.replace("-", "_"), None)
    if value is not None:
        return value
    return config.get(key, default)


def _rule_config(args, config) -> extraction.RuleConfig:
    path = _opt(args, config, "rule_config")
    if path:
        _require_files(path)
        return extraction.load_rule_config(path)
    return extraction.RuleConfig()


def cmd_demo(args, config) -> int:
    manifest = fixtures.write_fixture(args.out, seed=args.seed)
    _emit(out_dir=args.out, seed=args.seed,
          publications=manifest["publication_count"],
          planted_names=len(manifest["planted_names"]))
    return 0


def cmd_ingest(args, config) -> int:
    corpus_path = _opt(args, config, "corpus")
    _require_files(corpus_path)
    if args.lenient:
        corpus, problems = ingest.load_corpus_lenient(corpus_path)
        for problem in problems:
            print(f"warning: line {problem.line_no}: {problem.reason}", file=sys.stderr)
        _emit(records=len(corpus), rejected=len(problems), mode="lenient")
    else:
        corpus = ingest.load_corpus(corpus_path, strict=True)
        _emit(records=len(corpus), rejected=0, mode="strict")
    years = [p.year for p in corpus]
    if years:
        _emit(year_min=min(years), year_max=max(years))
    _emit(peer_reviewed=sum(1 for p in corpus if p.peer_reviewed))
    return 0


def _load_corpus_for(args, config):
    corpus_path = _opt(args, config, "corpus")
    _require_files(corpus_path)
    strict = not getattr(args, "lenient", False)
    if strict:
        return ingest.load_corpus(corpus_path, strict=True)
    corpus, _problems = ingest.load_corpus_lenient(corpus_path)
    return corpus


def cmd_extract(args, config) -> int:
    corpus = _load_corpus_for(args, config)
    rule_config = _rule_config(args, config)
    hits = extraction.extract_corpus(corpus, rule_config)
    candidates = extraction.merge_candidates(hits)
    out = args.out
    extraction.write_worklist(candidates, out)
    _emit(publications=len(corpus), hits=len(hits), candidates=len(candidates),
          worklist=out)
    if candidates:
        _emit(top_candidate=candidates[0].normalized_name,
              top_score=f"{candidates[0].score:.6f}")
    return 0


def cmd_curate(args, config) -> int:
    corpus = _load_corpus_for(args, config)
    decisions_path = args.decisions or config.get("curation")
    _require_files(decisions_path)
    rule_config = _rule_config(args, config)
    hits = extraction.extract_corpus(corpus, rule_config)
    candidates = extraction.merge_candidates(hits)
    decisions = extraction.load_curation_file(decisions_path)
    result = extraction.apply_curation(candidates, decisions)
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    ingest.write_catalog(result.accepted, args.out)
    _emit(accepted=len(result.accepted), rejected=len(result.rejected),
          pending=len(result.pending), warnings=len(result.warnings),
          catalog=args.out)
    return 0


def cmd_import_portals(args, config) -> int:
    catalog_path = _opt(args, config, "catalog")
    portals_path = _opt(args, config, "portals")
    _require_files(catalog_path, portals_path)
    catalog = ingest.load_catalog(catalog_path)
    portal_records = ingest.load_portal_records(portals_path)
    result = ingest.import_portal_records(portal_records, catalog)
    for conflict in result.conflicts:
        print(f"warning: homepage conflict for {conflict.software_name}: "
              f"kept {conflict.existing}, ignored {conflict.incoming}", file=sys.stderr)
    ingest.write_catalog(result.catalog, args.out)
    _emit(records=len(result.catalog), created=len(result.created),
          enriched=len(result.enriched), conflicts=len(result.conflicts),
          catalog=args.out)
    return 0


def _compile_lexicon(args, config, catalog):
    rule_config = _rule_config(args, config)
    return matching.compile_lexicon(catalog, rule_config.common_words,
                                    rule_config.trigger_words)


def cmd_match(args, config) -> int:
    corpus = _load_corpus_for(args, config)
    catalog_path = _opt(args, config, "catalog")
    _require_files(catalog_path)
    catalog = ingest.load_catalog(catalog_path)
    lexicon = _compile_lexicon(args, config, catalog)
    mentions = matching.find_all_mentions(corpus, lexicon)
    index = matching.MentionIndex((m.sw_id, m.pub_id) for m in mentions)
    if args.dump:
        matching.write_mention_dump(mentions, args.dump)
        _emit(dump=args.dump)
    _emit(mentions=len(mentions), pairs=len(index.pairs()),
          software_with_mentions=len(index.by_software),
          publications_with_mentions=len(index.by_publication))
    return 0


def cmd_build(args, config) -> int:
    corpus = _load_corpus_for(args, config)
    catalog_path = _opt(args, config, "catalog")
    _require_files(catalog_path)
    catalog = ingest.load_catalog(catalog_path)
    lexicon = _compile_lexicon(args, config, catalog)
    index = matching.build_mention_index(corpus, lexicon)
    built = profiles.build_profiles(
        catalog, index, corpus,
        cloud_size=int(_opt(args, config, "cloud_size", profiles.DEFAULT_CLOUD_SIZE)),
        similar_k=int(_opt(args, config, "similar_k", profiles.DEFAULT_SIMILAR_K)),
        jaccard_weight=float(_opt(args, config, "jaccard_weight",
                                  profiles.DEFAULT_JACCARD_WEIGHT)),
        cosine_weight=float(_opt(args, config, "cosine_weight",
                                 profiles.DEFAULT_COSINE_WEIGHT)),
    )
    built_at = _opt(args, config, "built_at") or _utc_now()
    snap = snapshot.build_snapshot(catalog, built, index, corpus, built_at)
    snapshot.save_snapshot(snap, args.out)
    _emit(snapshot=args.out, software=len(snap.catalog),
          publications=len(snap.publications), pairs=len(index.pairs()),
          built_at=built_at)
    return 0


def cmd_check_links(args, config) -> int:
    catalog_path = _opt(args, config, "catalog")
    history_path = args.history or config.get("history")
    if not history_path:
        raise CatalogError("--history (or config history) is required")
    _require_files(catalog_path)
    catalog = ingest.load_catalog(catalog_path)
    link_config = config.get("link_policy", {})
    policy = linkcheck.CheckPolicy(
        timeout=float(_opt(args, link_config, "timeout", 10.0)),
        retries=int(_opt(args, link_config, "retries", 2)),
        backoff_base=float(_opt(args, link_config, "backoff_base", 1.0)),
        global_parallelism=int(_opt(args, link_config, "parallelism", 8)),
        user_agent=_opt(args, link_config, "user_agent",
                        "swcatalog-linkcheck/0.1"),
    )
    store = linkcheck.HistoryStore(history_path)
    report = linkcheck.run_sweep(catalog, policy, store)
    _emit(checked=report.checked, skipped=report.skipped,
          newly_dead=len(report.newly_dead), history=history_path)
    for outcome in sorted(report.counts):
        _emit(**{f"outcome_{outcome}": report.counts[outcome]})
    for url in report.newly_dead:
        print(f"newly_dead_url={url}")
    return 0


def cmd_serve(args, config) -> int:
    snapshot_path = _opt(args, config, "snapshot")
    _require_files(snapshot_path)
    bind = _opt(args, config, "bind", "127.0.0.1:8080")
    template = _opt(args, config, "pub_link_template",
                    service.DEFAULT_PUB_LINK_TEMPLATE)
    history = _opt(args, config, "history")
    server = service.serve(snapshot_path, bind, template, history)
    host, port = server.server_address[:2]
    _emit(serving=f"http://{host}:{port}", snapshot=snapshot_path)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def cmd_export(args, config) -> int:
    snapshot_path = _opt(args, config, "snapshot")
    _require_files(snapshot_path)
    snap = snapshot.load_snapshot(snapshot_path)
    if args.catalog_out:
        ingest.write_catalog(snap.catalog, args.catalog_out)
        _emit(catalog_out=args.catalog_out, records=len(snap.catalog))
    if args.profiles_out:
        with open(args.profiles_out, "w", encoding="utf-8") as fh:
            for sw_id in sorted(snap.profiles):
                doc = {"sw_id": sw_id}
                doc.update(snapshot._profile_doc(snap.profiles[sw_id]))
                fh.write(json.dumps(doc, ensure_ascii=False, sort_keys=True) + "\n")
        _emit(profiles_out=args.profiles_out, profiles=len(snap.profiles))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="swcatalog",
                     description="Publication-driven mathematical software catalog")
    parser.add_argument("--config", help="JSON pipeline config with shared paths/settings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("demo", help="generate the seeded synthetic fixture")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=fixtures.DEFAULT_SEED)
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("ingest", help="validate a corpus file")
    p.add_argument("--corpus")
    p.add_argument("--strict", dest="lenient", action="store_false", default=False)
    p.add_argument("--lenient", dest="lenient", action="store_true")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("extract", help="mine titles into a curation worklist")
    p.add_argument("--corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--rule-config")
    p.add_argument("--lenient", action="store_true", default=False)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("curate", help="apply curation decisions to the worklist")
    p.add_argument("--corpus")
    p.add_argument("--decisions")
    p.add_argument("--out", required=True)
    p.add_argument("--rule-config")
    p.add_argument("--lenient", action="store_true", default=False)
    p.set_defaults(func=cmd_curate)

    p = sub.add_parser("import-portals", help="merge portal records into the catalog")
    p.add_argument("--catalog")
    p.add_argument("--portals")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_import_portals)

    p = sub.add_parser("match", help="build the mention index")
    p.add_argument("--corpus")
    p.add_argument("--catalog")
    p.add_argument("--dump")
    p.add_argument("--rule-config")
    p.add_argument("--lenient", action="store_true", default=False)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("build", help="derive profiles and write the snapshot")
    p.add_argument("--corpus")
    p.add_argument("--catalog")
    p.add_argument("--out", required=True)
    p.add_argument("--built-at")
    p.add_argument("--cloud-size", type=int)
    p.add_argument("--similar-k", type=int)
    p.add_argument("--rule-config")
    p.add_argument("--lenient", action="store_true", default=False)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check-links", help="verify homepages, append history")
    p.add_argument("--catalog")
    p.add_argument("--history")
    p.add_argument("--timeout", type=float)
    p.add_argument("--retries", type=int)
    p.add_argument("--backoff-base", type=float, dest="backoff_base")
    p.add_argument("--parallelism", type=int)
    p.add_argument("--user-agent", dest="user_agent")
    p.set_defaults(func=cmd_check_links)

    p = sub.add_parser("serve", help="serve the catalog API from a snapshot")
    p.add_argument("--snapshot")
    p.add_argument("--bind")
    p.add_argument("--pub-link-template", dest="pub_link_template")
    p.add_argument("--history")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export", help="re-emit catalog/profiles as line files")
    p.add_argument("--snapshot")
    p.add_argument("--catalog-out", dest="catalog_out")
    p.add_argument("--profiles-out", dest="profiles_out")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    config = {}
    try:
        config = _load_config(args.config)
        return args.func(args, config)
    except CorpusFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CatalogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
