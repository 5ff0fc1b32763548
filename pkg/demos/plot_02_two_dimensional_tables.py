"""
Tables for CP1 x CP1 and CP2
============================

For n = 2 the complex has five wedge degrees.  This script prints the
dimension tables for B = I and B = [[2,1],[1,2]] up to d = 8 and times them.
"""

import time

from toricpoisson import full_table, preset, build_pi
from toricpoisson.formats import ascii_table

for name in ("p1xp1", "p2"):
    form = preset(name)
    start = time.perf_counter()
    summary = full_table(2, build_pi(form), 8)
    print(name, form)
    print(ascii_table(summary))
    print(f"computed in {time.perf_counter() - start:.1f}s\n")

# The largest matrix in these tables is sigma^2_[8].
from toricpoisson import assemble_sigma_matrix
m = assemble_sigma_matrix(2, 8, 2, build_pi(preset("p2")))
print("sigma^2_[8] shape:", m.shape, "nonzeros:", m.matrix.nnz())
