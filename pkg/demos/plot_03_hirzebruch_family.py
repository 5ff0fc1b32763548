"""
A persistent family on the Hirzebruch surface X_2
=================================================

For B = [[6,-2],[-2,2]] the columns p = 3 and p = 4 never die out.  We push
the computation to d = 12 and check that z2^d dz1^dw1^dw2 and
w2^d dz1^dz2^dw1 keep representing nonzero classes.
"""

from toricpoisson import MultiVector, PoissonComplex, build_pi, preset

cx = PoissonComplex(build_pi(preset("hirzebruch2")))

for d in range(13):
    print(d, cx.row(d))

# Membership is decided exactly: reduce modulo the image, then modulo the
# representatives.
for d in range(9, 13):
    a = MultiVector.term(2, 1, (0, d, 0, 0), (0, 2, 3))
    b = MultiVector.term(2, 1, (0, 0, 0, d), (0, 1, 2))
    print(d, a.to_text(), cx.in_representative_span(a, d, 3),
          b.to_text(), cx.in_representative_span(b, d, 3))

# The two neighbours of X_2 in the family behave generically.
for name in ("hirzebruch1", "hirzebruch3"):
    other = PoissonComplex(build_pi(preset(name)))
    print(name, [other.row(d) for d in range(6, 9)])
