#!/usr/bin/env python3
"""Regenerates tests/data/golden_summary_pairs.json.

Independent re-implementation of the pinned sampler: splitmix64, partial
Fisher-Yates with next() % (m - i), each summary sorted, one stream for all
pairs (first then second of each pair).
"""
import json
import sys

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)


def draw(rng, m, n):
    pool = list(range(m))
    for i in range(n):
        j = i + rng.next() % (m - i)
        pool[i], pool[j] = pool[j], pool[i]
    return sorted(pool[:n])


def main(path, seed=2014, m=600, n=24, count=100):
    rng = SplitMix64(seed)
    pairs = []
    for _ in range(count):
        first = draw(rng, m, n)
        second = draw(rng, m, n)
        pairs.append({"first": first, "second": second})
    doc = {"video_id": "golden", "seed": seed, "m": m, "n": n, "pairs": pairs}
    with open(path, "w") as f:
        f.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/golden_summary_pairs.json")
