"""
Cohomology of zw d_z ^ d_w on the plane
=======================================

The simplest quadratic toric structure lives on C^2 with coordinates z, w.
We build it, print the cohomology table up to degree 6 and list the
representatives in each nonzero cell.
"""

from toricpoisson import PoissonBivector, PoissonComplex, full_table
from toricpoisson.formats import ascii_table

pi = PoissonBivector([[1]])
print("pi =", pi.bivector.to_text())

# Every cell (d, p) is a finite-dimensional space, so the whole table is
# exact linear algebra over Q(i).
summary = full_table(1, pi, 6)
print(ascii_table(summary))

# The nonzero cells and a basis of representatives for each one.
cx = PoissonComplex(pi)
for d in range(7):
    for p in range(3):
        for x in cx.representatives(d, p):
            print(f"H^{p}_[{d}]:", x.to_text())

# Rescaling B does not change anything.
print(full_table(1, PoissonBivector([["-7/2"]]), 6).grid() == summary.grid())
