"""Homepage verification against a local scripted server.

Spins up an in-process stub so the demo needs no network, then shows the
outcome classification, retry behavior, and the sweep's newly-dead diff.
"""

import sys
import tempfile
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from swcatalog.linkcheck import CheckPolicy, HistoryStore, check_url, run_sweep
from swcatalog.records import SoftwareRecord

DEAD = {"flag": False}


class Handler(BaseHTTPRequestHandler):
    def _go(self):
        if self.path == "/stable":
            self.send_response(200)
        elif self.path == "/moved":
            self.send_response(301)
            self.send_header("Location", f"http://127.0.0.1:{PORT}/stable")
        elif self.path == "/gone":
            self.send_response(404)
        elif self.path == "/mortal":
            self.send_response(404 if DEAD["flag"] else 200)
        elif self.path == "/sleepy":
            time.sleep(2.0)
            self.send_response(200)
        else:
            self.send_response(404)
        self.send_header("Content-Length", "0")
        self.end_headers()

    do_GET = do_HEAD = _go

    def log_message(self, *args):
        pass


server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
server.daemon_threads = True
PORT = server.server_address[1]
threading.Thread(target=server.serve_forever, daemon=True).start()

policy = CheckPolicy(timeout=0.5, retries=2, backoff_base=0.05)
for path in ("/stable", "/moved", "/gone", "/sleepy"):
    status = check_url(f"http://127.0.0.1:{PORT}{path}", policy)
    print(f"{path:<8} -> {status.outcome:<12} code={status.code} "
          f"attempts={status.attempts} final={status.final_url}")

print("\nA sweep checks every catalog homepage and appends to the history file.")
catalog = [
    SoftwareRecord(sw_id="swm:a", name="A", homepage=f"http://127.0.0.1:{PORT}/stable"),
    SoftwareRecord(sw_id="swm:b", name="B", homepage=f"http://127.0.0.1:{PORT}/mortal"),
    SoftwareRecord(sw_id="swm:c", name="C"),  # no homepage: skipped
]
history = Path(tempfile.mkdtemp(prefix="swcatalog-demo-")) / "history.tsv"
store = HistoryStore(history)

first = run_sweep(catalog, policy, store)
print(f"sweep 1: counts={first.counts} skipped={first.skipped} "
      f"newly_dead={first.newly_dead}")

DEAD["flag"] = True  # the mortal homepage rots between sweeps
second = run_sweep(catalog, policy, store)
print(f"sweep 2: counts={second.counts} skipped={second.skipped} "
      f"newly_dead={second.newly_dead}")

print(f"\nhistory file {history}:")
sys.stdout.write(history.read_text())
server.shutdown()
