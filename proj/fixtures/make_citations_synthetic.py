#!/usr/bin/env python3
"""Regenerates citations_synthetic.csv.

The law mimics the shape of a large single-year citation census: a mass of
uncited papers, a fixed count of papers cited once, and a shifted power-law
body n(x) ~ (x + 16)^-2.9 for x >= 2. Counts are floored to integers, then
single papers are moved one citation down until the mean rounds to 8.5733.
"""
import sys

TOTAL_PAPERS = 783339
UNCITED = 368110
CITED_ONCE = 70836
EXPONENT = 2.9
SHIFT = 16.0
MAX_VALUE = 8000
TARGET_MEAN = 8.5733


def build():
    xs = range(2, MAX_VALUE + 1)
    weights = [(x + SHIFT) ** -EXPONENT for x in xs]
    rest = TOTAL_PAPERS - UNCITED - CITED_ONCE
    norm = sum(weights)
    counts = {0: UNCITED, 1: CITED_ONCE}
    for x, w in zip(xs, weights):
        c = int(w / norm * rest)
        if c > 0:
            counts[x] = c
    # Flooring loses papers; put them back on value 2 so the total is exact.
    counts[2] += TOTAL_PAPERS - sum(counts.values())

    target = round(TARGET_MEAN * TOTAL_PAPERS)
    excess = sum(v * c for v, c in counts.items()) - target
    x = 3
    while excess > 0:
        if counts.get(x, 0) > 1:
            counts[x] -= 1
            counts[x - 1] = counts.get(x - 1, 0) + 1
            excess -= 1
        x = x + 1 if x < 40 else 3
    if excess < 0:
        sys.exit("power-law body too light for target mean")
    return counts


def main():
    counts = build()
    out = sys.stdout
    out.write("# Synthetic citation census (not real ISI data).\n")
    out.write("# papers=%d mean=%.6f\n" % (sum(counts.values()),
              sum(v * c for v, c in counts.items()) / sum(counts.values())))
    out.write("citations,count\n")
    for v in sorted(counts):
        out.write("%d,%d\n" % (v, counts[v]))


if __name__ == "__main__":
    main()
