"""
The monitoring service end to end
=================================

An in-process tour of the HTTP surface the dashboard consumes: ingest a
batch, query the map features, read the histogram, list untagged tweets, and
prove the append-only log replays to the same answers.
"""

import json
import tempfile
import threading
from pathlib import Path

import urllib.request

from tweetloc import Resources, TweetStore, run_server

resources = Resources.bundled()
store_path = Path(tempfile.mkdtemp()) / "demo-store.jsonl"

store = TweetStore(store_path, resources=resources)
server = run_server(store, port=0)
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{server.server_address[1]}"
print("serving on", base)


def get(path):
    with urllib.request.urlopen(base + path) as resp:
        return json.loads(resp.read())


def post(path, payload):
    req = urllib.request.Request(base + path, data=json.dumps(payload).encode(),
                                 method="POST")
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


batch = [
    {"id": "m1", "text": "Dengue cases climbing in Kerala", "created_at": "2017-09-20T03:00:00Z"},
    {"id": "m2", "text": "Malaria camp opens near Guntur", "created_at": "2017-09-20T15:30:00Z"},
    {"id": "m3", "text": "Floods cut off roads around Darjeeling", "created_at": "2017-09-21T11:00:00Z"},
    {"id": "m4", "text": "quiet day, nothing to report", "created_at": "2017-09-21T22:00:00Z"},
]
print("\ningest:", post("/ingest", batch))
print("re-ingest (all duplicates):", post("/ingest", batch))

print("\nhealth:", get("/health"))

# the map layer: one GeoJSON point per verified mention, with the posting
# hour for night/day shading
for feature in get("/tweets?q=dengue,malaria")["features"]:
    props = feature["properties"]
    print(f"  {props['phrase']:12s} at {feature['geometry']['coordinates']} "
          f"hour={props['hour']:2d} from {props['tweet_id']}")

print("\nhistogram:", get("/histogram?from=2017-09-20&to=2017-09-21"))
print("untagged:", [r["tweet_id"] for r in get("/untagged")["items"]])

server.shutdown()

# durability: a fresh store over the same log answers identically
replayed = TweetStore(store_path, resources=resources)
print("\nreplayed record count:", replayed.snapshot.record_count)
