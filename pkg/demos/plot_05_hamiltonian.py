"""
Which structures are Hamiltonian?
=================================

The momentum map of pi_B has exponents conj(B^-1).  Integer exponents give a
torus valued map, rational ones a map into a finite quotient of the torus.
"""

from toricpoisson import HermitianForm, congruence_transform, hamiltonian_classify
from toricpoisson.toric import PRESETS, format_matrix

for name, entries in PRESETS.items():
    h = hamiltonian_classify(HermitianForm(entries))
    print(f"{name:12} exponents {format_matrix(h.exponent_matrix):28} {h.classification}")

for b in ("1", "2", "1/3", "-1"):
    print("B =", b, hamiltonian_classify(HermitianForm([[b]])).classification)

# A chart change replaces B by P* B P and keeps the classification.
B = HermitianForm(PRESETS["hirzebruch1"])
B2 = congruence_transform(B, [[1, 1], [0, 1]])
print(format_matrix(B2.entries), B2.det == B.det, hamiltonian_classify(B2).classification)

# A non-real entry in conj(B^-1) rules out a finitely multivalued map.
print(hamiltonian_classify(HermitianForm([[2, "i"], ["-i", 1]])).classification)
