#!/usr/bin/env python3
"""Writes the bundled 12-subshot synthetic video under fixtures/synthetic/.

Produces annotations.json, ground_truths.json, self_summary.json and a
frames/ directory of 8x6 binary PPMs (two frames per subshot). The features
file is derived from the frames with `videoset features`.
"""
import json
import os
import sys

ANNOTATIONS = [
    "I walked down the street to the bus stop.",
    "I waited at the bus stop in the rain.",
    "I rode the bus downtown.",
    "I walked into the grocery store.",
    "I picked up apples and bread.",
    "I paid the cashier at the checkout.",
    "I carried the groceries home.",
    "I cooked pasta in the kitchen.",
    "I ate dinner at the table.",
    "I washed the dishes in the sink.",
    "I watched television on the couch.",
    "I turned off the lights and slept.",
]

# (temporal_pos, rank, text). Author "a" reuses annotation wording verbatim,
# so the summary [2, 4, 7, 10] reproduces its top-4 text exactly.
GROUND_TRUTHS = [
    ("a", [(0, 6, ANNOTATIONS[0]), (2, 1, ANNOTATIONS[2]), (4, 2, ANNOTATIONS[4]),
           (7, 3, ANNOTATIONS[7]), (9, 5, ANNOTATIONS[9]), (10, 4, ANNOTATIONS[10])]),
    ("b", [(1, 3, "I took the bus into town."), (2, 1, "I bought apples and bread at the grocery store."),
           (3, 2, "I cooked pasta for dinner in the kitchen."), (4, 5, "I washed dishes after dinner."),
           (5, 4, "I relaxed watching television.")]),
]

SELF_SUMMARY = [2, 4, 7, 10]

# Base RGB per subshot; frames add a small deterministic jitter.
PALETTE = [
    (128, 128, 128), (110, 115, 125), (230, 200, 40), (240, 240, 235),
    (200, 40, 40), (235, 235, 225), (120, 125, 130), (220, 130, 40),
    (130, 80, 40), (60, 110, 220), (30, 30, 90), (20, 20, 30),
]


def lcg(seed):
    state = seed
    while True:
        state = (state * 6364136223846793005 + 1442695040888963407) & ((1 << 64) - 1)
        yield (state >> 33) % 23 - 11


def write_ppm(path, base, seed, w=8, h=6):
    jitter = lcg(seed)
    raster = bytearray()
    for _ in range(w * h):
        for c in base:
            raster.append(max(0, min(255, c + next(jitter))))
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (w, h) + bytes(raster))


def dump(path, doc):
    with open(path, "w") as f:
        f.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def main(root):
    os.makedirs(os.path.join(root, "frames"), exist_ok=True)
    dump(os.path.join(root, "annotations.json"), {
        "video_id": "synthetic-day",
        "subshot_seconds": 5.0,
        "subshots": [{"index": i, "start_s": 5.0 * i, "end_s": 5.0 * (i + 1), "text": t}
                     for i, t in enumerate(ANNOTATIONS)],
    })
    dump(os.path.join(root, "ground_truths.json"), {
        "video_id": "synthetic-day",
        "summaries": [{"author_id": a, "sentences": [{"temporal_pos": p, "rank": r, "text": t} for p, r, t in s]}
                      for a, s in GROUND_TRUTHS],
    })
    dump(os.path.join(root, "self_summary.json"), {"video_id": "synthetic-day", "indices": SELF_SUMMARY})
    for i, base in enumerate(PALETTE):
        for k in range(2):
            write_ppm(os.path.join(root, "frames", "frame_%d_%d.ppm" % (i, k)), base, 1000 * i + k + 1)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures/synthetic")
