import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toricpoisson.coefficients import GaussianRational, gq
from toricpoisson.exterior import DimensionError, parse_multivector
from toricpoisson.schouten import schouten_bracket
from toricpoisson.toric import (
    PRESETS,
    HamiltonianKind,
    HermitianForm,
    NonHermitianWarning,
    SingularFormError,
    build_pi,
    congruence_transform,
    determinant,
    format_matrix,
    hamiltonian_classify,
    parse_matrix,
    preset,
)


def form(rows):
    return HermitianForm(rows)


def mat(rows):
    return tuple(tuple(gq(x) for x in row) for row in rows)


def test_build_pi_examples():
    assert build_pi(form([[1]])).bivector == parse_multivector(1, "z*w dz^dw")
    assert build_pi(form([[1, 0], [0, 1]])).bivector == parse_multivector(
        2, "z1*w1 dz1^dw1 + z2*w2 dz2^dw2")
    pi = build_pi(form([[2, 1], [1, 2]]))
    assert pi.bivector == parse_multivector(
        2, "2*z1*w1 dz1^dw1 + z1*w2 dz1^dw2 + z2*w1 dz2^dw1 + 2*z2*w2 dz2^dw2")


def test_build_pi_raw_form_is_still_poisson():
    with pytest.warns(NonHermitianWarning):
        raw = HermitianForm([[1, 2], [7, 3]], raw=True)
    assert not raw.hermitian
    pi = build_pi(raw)
    assert schouten_bracket(pi.bivector, pi.bivector).is_zero()


def test_non_hermitian_rejected_without_raw():
    with pytest.raises(ValueError):
        HermitianForm([[1, 2], [3, 1]])
    with pytest.raises(ValueError):
        HermitianForm([["i"]])


def test_hermitian_complex_entries_accepted():
    b = HermitianForm([[1, "2+i"], ["2-i", 3]])
    assert b.hermitian and not b.symmetric
    assert b.det == gq(-2)


def test_shape_errors():
    with pytest.raises(DimensionError):
        HermitianForm([[1, 2]])
    with pytest.raises(DimensionError):
        parse_matrix("1,2;3")


def test_matrix_text_round_trip():
    text = "2,1+i;1-i,-1/2"
    assert format_matrix(parse_matrix(text)) == text


@pytest.mark.parametrize(
    "B, P, expected",
    [
        ([[1, 0], [0, 1]], [[1, 1], [0, 1]], [[1, 1], [1, 2]]),
        ([[2, 1], [1, 2]], [[0, 1], [1, 0]], [[2, 1], [1, 2]]),
        ([[6, -2], [-2, 2]], [[1, 0], [0, 1]], [[6, -2], [-2, 2]]),
        ([[1, "i"], ["-i", 2]], [[1, 0], [0, -1]], [[1, "-i"], ["i", 2]]),
    ],
)
def test_congruence_examples(B, P, expected):
    assert congruence_transform(form(B), P).entries == mat(expected)


def test_congruence_rejects_non_unimodular():
    with pytest.raises(ValueError):
        congruence_transform(form([[1, 0], [0, 1]]), [[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        congruence_transform(form([[1, 0], [0, 1]]), [[1, 0]])
    with pytest.raises(ValueError):
        congruence_transform(form([[1, 0], [0, 1]]), [[Fraction(1, 2), 0], [0, 2]])


def random_unimodular(rng, n, steps=4):
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-2, 2)
        P[i] = [a + k * b for a, b in zip(P[i], P[j])]
        if rng.random() < 0.3:
            P[i], P[j] = P[j], P[i]
    return P


def random_hermitian(rng, n):
    def rat():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    rows = [[None] * n for _ in range(n)]
    for p in range(n):
        rows[p][p] = GaussianRational(rat())
        for q in range(p + 1, n):
            rows[p][q] = GaussianRational(rat(), rat())
            rows[q][p] = rows[p][q].conj()
    return HermitianForm(rows)


def intmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_congruence_preserves_hermitian_and_det_and_composes(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    B = random_hermitian(rng, n)
    P, Q = random_unimodular(rng, n), random_unimodular(rng, n)
    once = congruence_transform(B, P)
    assert once.hermitian and once.det == B.det
    assert congruence_transform(once, Q) == congruence_transform(B, intmul(P, Q))


def test_hamiltonian_examples():
    h = hamiltonian_classify(form([[2]]))
    assert h.exponent_matrix == mat([["1/2"]])
    assert h.classification is HamiltonianKind.FINITE_QUOTIENT_VALUED
    h = hamiltonian_classify(form([[1, 0], [0, 1]]))
    assert h.exponent_matrix == mat([[1, 0], [0, 1]])
    assert h.classification is HamiltonianKind.SINGLE_VALUED_TORUS_VALUED
    h = hamiltonian_classify(preset("p2"))
    assert h.exponent_matrix == mat([["2/3", "-1/3"], ["-1/3", "2/3"]])
    assert h.classification is HamiltonianKind.FINITE_QUOTIENT_VALUED


def test_hamiltonian_imaginary_exponent_is_not_hamiltonian():
    h = hamiltonian_classify(form([[2, "i"], ["-i", 1]]))
    assert h.classification is HamiltonianKind.NOT_HAMILTONIAN


def test_hamiltonian_singular_form():
    with pytest.raises(SingularFormError):
        hamiltonian_classify(form([[1, 1], [1, 1]]))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_exponent_matrix_times_conj_b_is_identity(seed):
    rng = random.Random(seed)
    B = random_hermitian(rng, rng.choice([1, 2, 3]))
    if not B.invertible:
        return
    E = hamiltonian_classify(B).exponent_matrix
    n = B.n
    conjB = [[x.conj() for x in row] for row in B.entries]
    prod = [[sum((E[i][k] * conjB[k][j] for k in range(n)), gq(0)) for j in range(n)] for i in range(n)]
    assert prod == [[gq(int(i == j)) for j in range(n)] for i in range(n)]


def test_presets():
    assert preset("nakanishi").entries == mat([[1]])
    assert preset("p1xp1").entries == mat([[1, 0], [0, 1]])
    assert preset("p2").entries == mat([[2, 1], [1, 2]])
    assert preset("hirzebruch2").entries == mat([[6, -2], [-2, 2]])
    for m in (1, 2, 3):
        b = preset(f"hirzebruch{m}")
        assert b.entries == mat([[2 + m * m, -m], [-m, 2]])
        assert b.det == gq(4 + m * m)
    assert set(PRESETS) == {"nakanishi", "p1xp1", "p2", "hirzebruch1", "hirzebruch2", "hirzebruch3"}


def test_unknown_preset_lists_names():
    with pytest.raises(KeyError) as info:
        preset("p3")
    assert "hirzebruch2" in str(info.value)


def test_determinant_and_scaling():
    assert determinant(mat([[2, 1], [1, 2]])) == gq(3)
    assert determinant(mat([[0, 1], [1, 0]])) == gq(-1)
    assert preset("p2").scaled(5).entries == mat([[10, 5], [5, 10]])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonHermitianWarning)
        assert not preset("p2").scaled("i").hermitian
