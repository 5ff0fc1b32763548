"""
Sorting generators into types
=============================

Representatives that are single basis terms can be sorted by shape: Euler
type products, terms with disjoint exponents, and wedges of the two.
"""

from collections import Counter

from toricpoisson import build_pi, classify_generator, full_table, preset

for name in ("p1xp1", "p2", "hirzebruch2"):
    pi = build_pi(preset(name))
    summary = full_table(2, pi, 6, classify=True)
    counts = Counter()
    for (d, p), rec in sorted(summary.cells.items()):
        for x, t in zip(rec.representatives, rec.types):
            counts[str(t)] += 1
            if str(t) != "I":
                print(f"{name:12} H^{p}_[{d}]  {x.to_text():32} {t}")
    print(name, dict(counts), "\n")

# Multi-term elements are never typed.
from toricpoisson.exterior import parse_multivector
print(classify_generator(parse_multivector(2, "z1 dz1 + w1 dw1")))
