"""The read-only catalog API, end to end.

Runs the pipeline on the demo fixture, builds an immutable snapshot,
serves it, and queries every endpoint family once.
"""

import json
import subprocess
import sys
import tempfile
import urllib.request
from pathlib import Path

from swcatalog.service import make_server, run_in_thread
from swcatalog.snapshot import load_snapshot

work = Path(tempfile.mkdtemp(prefix="swcatalog-demo-"))


def cli(*args):
    subprocess.run([sys.executable, "-m", "swcatalog.cli", *args],
                   check=True, stdout=subprocess.DEVNULL)


cli("demo", "--out", str(work), "--seed", "42")
cli("extract", "--corpus", str(work / "corpus.jsonl"),
    "--out", str(work / "worklist.tsv"))
cli("curate", "--corpus", str(work / "corpus.jsonl"),
    "--decisions", str(work / "curation.tsv"), "--out", str(work / "catalog.jsonl"))
cli("import-portals", "--catalog", str(work / "catalog.jsonl"),
    "--portals", str(work / "portals.jsonl"), "--out", str(work / "full.jsonl"))
cli("build", "--corpus", str(work / "corpus.jsonl"),
    "--catalog", str(work / "full.jsonl"), "--out", str(work / "snapshot.json"),
    "--built-at", "2026-01-01T00:00:00Z")

server = make_server(load_snapshot(work / "snapshot.json"), port=0)
run_in_thread(server)
base = f"http://127.0.0.1:{server.server_address[1]}"
print(f"serving {base} from {work / 'snapshot.json'}\n")


def get(path):
    with urllib.request.urlopen(base + path) as resp:
        return json.loads(resp.read())


health = get("/api/health")
print(f"health: {health['software_count']} software, "
      f"{health['publication_count']} publications, built {health['built_at']}")

results = get("/api/software?q=singular")
print("\nsearch q=singular:")
for item in results["items"]:
    print(f"  {item['score']:.3f}  {item['name']} ({item['total_references']} refs)")

detail = get("/api/software/swm:singular")
print(f"\ndetail swm:singular: cloud={detail['profile']['keyword_cloud'][:3]}")
print(f"  similar: {[s['name'] for s in detail['profile']['similar'][:3]]}")
print(f"  timeline: {detail['profile']['references_by_year']}")

advanced = get("/api/software/advanced?msc=13&year_from=2008")
print(f"\nadvanced msc=13 year_from=2008: {[i['name'] for i in advanced['items']]}")

alpha = get("/api/browse/alpha/s")
print(f"\nbrowse alpha 's': {[i['name'] for i in alpha['items']]}")

msc = get("/api/browse/msc/65")
print(f"browse msc 65: {[i['name'] for i in msc['items']]}")

stats = get("/api/stats")
print(f"\nstats: top sections {stats['top_msc_sections'][:3]}")

server.shutdown()
