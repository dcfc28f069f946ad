"""Regenerate the viewer conformance fixtures from the producer package.

Writes, into frontend/test/fixtures/:
  * <name>.scene.json   - the three shipped documents (dh, pickplace, evacuation)
  * <name>.poses.json   - sampled pose logs (the playback-equivalence oracle)
  * portable_cases.json - trig and 4x4-product cases for bit-equality checks

Run from the repository root:  python3 frontend/scripts/make_fixtures.py
"""

import json
import math
import sys
from pathlib import Path

import numpy as np

from kinesim.demos import dh_demo_document, evacuation_document, pickplace_document
from kinesim.linalg import htm_rand, mm4, portable_sincos
from kinesim.serialization import to_json

OUT = Path(__file__).resolve().parent.parent / "test" / "fixtures"


def sample_times(duration: float, rng) -> list[float]:
    grid = [i * duration / 40.0 for i in range(41)]
    jitter = [float(rng.uniform(0.0, duration)) for _ in range(12)]
    return sorted(set(grid + jitter + [0.0, duration]))


def pose_log(doc, times) -> dict:
    ids = sorted(doc.sample(0.0))
    log = {"times": times, "ids": ids, "poses": {i: [] for i in ids}}
    for t in times:
        sampled = doc.sample(t)
        for i in ids:
            log["poses"][i].append([float(v) for v in np.asarray(sampled[i]).reshape(-1)])
    return log


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(2024)

    docs = {
        "dh": dh_demo_document(),
        "pickplace": pickplace_document(),
        "evacuation": evacuation_document(
            n=10, room=(6.0, 6.0), door_width=1.2, seed=11, t_end=40.0, stride=10
        )[0],
    }
    for name, doc in docs.items():
        (OUT / f"{name}.scene.json").write_bytes(to_json(doc))
        times = sample_times(doc.duration, rng)
        log = pose_log(doc, times)
        (OUT / f"{name}.poses.json").write_text(json.dumps(log), newline="\n")
        print(f"{name}: duration {doc.duration:.2f}s, {len(log['ids'])} ids, {len(times)} times")

    angles = [float(v) for v in rng.uniform(-40.0, 40.0, 400)]
    angles += [0.0, -0.0, math.pi, -math.pi, math.pi / 2, -math.pi / 2, 1e5, -1e5, 0.1, 123.456]
    trig = [[x, *portable_sincos(x)] for x in angles]
    products = []
    for _ in range(60):
        a = htm_rand(rng, 2.0, True)
        b = htm_rand(rng, 2.0, True)
        products.append(
            {
                "a": [float(v) for v in a.reshape(-1)],
                "b": [float(v) for v in b.reshape(-1)],
                "ab": [float(v) for row in mm4(a.tolist(), b.tolist()) for v in row],
            }
        )
    (OUT / "portable_cases.json").write_text(
        json.dumps({"trig": trig, "products": products}), newline="\n"
    )
    print(f"portable cases: {len(trig)} trig, {len(products)} products")
    return 0


if __name__ == "__main__":
    sys.exit(main())
