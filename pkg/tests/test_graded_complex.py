import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from toricpoisson.coefficients import GaussianRational, gq
from toricpoisson.exterior import MultiVector, cell_dimension, enumerate_cell, parse_multivector
from toricpoisson.graded_complex import (
    GeneratorType,
    PoissonComplex,
    SparseMatrix,
    assemble_sigma_matrix,
    classify_generator,
    cohomology_dim,
    cohomology_representatives,
    euler_characteristic_check,
    full_table,
    reduce_against,
    rref,
)
from toricpoisson.schouten import PoissonBivector, sigma
from toricpoisson.toric import PRESETS

I_ = GeneratorType.TYPE_I
II = GeneratorType.TYPE_II
III = GeneratorType.TYPE_III


def mv(n, text):
    return parse_multivector(n, text)


def engine(name_or_B):
    B = PRESETS[name_or_B] if isinstance(name_or_B, str) else name_or_B
    return PoissonComplex(PoissonBivector(B))


# -- assembly --------------------------------------------------------------------


def test_assemble_shapes():
    pi2 = PoissonBivector([[2, 1], [1, 2]])
    assert assemble_sigma_matrix(2, 8, 2, pi2).shape == (880, 990)
    one = PoissonBivector([[1]])
    top = assemble_sigma_matrix(1, 0, 2, one)
    assert top.shape == (0, 1)
    const = assemble_sigma_matrix(1, 0, 0, one)
    assert const.shape == (4, 1) and const.matrix.is_zero()


def test_columns_are_sigma_of_basis():
    pi = PoissonBivector([[6, -2], [-2, 2]])
    m = assemble_sigma_matrix(2, 2, 1, pi)
    for j in range(m.shape[1]):
        expected = sigma(m.domain.element(j), pi)
        assert m.codomain.vector(m.column(j)) == expected


# -- exact elimination ---------------------------------------------------------------


def test_rref_examples():
    eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    r = rref(eye)
    assert r.pivots == [0, 1, 2] and r.rank == 3
    assert r.matrix().to_dense() == [[gq(x) for x in row] for row in eye]
    z = rref([[0, 0], [0, 0]])
    assert z.pivots == [] and z.rank == 0
    h = rref([[1, gq("i")], [gq("-i"), 1]])
    assert h.rank == 1 and h.rows == [{0: gq(1), 1: gq("i")}]


def to_sympy(x):
    return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(
        x.im.numerator, x.im.denominator)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_rref_matches_sympy(seed):
    rng = random.Random(seed)
    nr, nc = rng.randint(1, 6), rng.randint(1, 6)
    rank_cap = rng.randint(1, min(nr, nc))
    # Low-rank products so that dependencies actually occur.
    def rnd():
        return GaussianRational(Fraction(rng.randint(-3, 3), rng.randint(1, 3)), rng.choice([0, 0, 1, -2]))
    L = [[rnd() for _ in range(rank_cap)] for _ in range(nr)]
    R = [[rnd() for _ in range(nc)] for _ in range(rank_cap)]
    dense = [[sum((L[i][k] * R[k][j] for k in range(rank_cap)), GaussianRational(0))
              for j in range(nc)] for i in range(nr)]
    ours = rref(dense)
    ref, pivots = sympy.Matrix([[to_sympy(x) for x in row] for row in dense]).rref()
    assert list(pivots) == ours.pivots
    for i, row in enumerate(ours.matrix().to_dense()):
        assert [sympy.nsimplify(to_sympy(x)) for x in row] == [sympy.nsimplify(sympy.expand(v)) for v in ref.row(i)]
    # null space vectors really are annihilated
    for v in ours.null_space():
        for row in dense:
            assert sum((row[j] * c for j, c in v.items()), GaussianRational(0)) == 0


# -- cohomology dimensions ---------------------------------------------------------


def test_dimension_examples():
    assert cohomology_dim(1, 2, 2, PoissonBivector([[1]])) == 1
    assert cohomology_dim(2, 2, 2, PoissonBivector([[1, 0], [0, 1]])) == 6
    assert cohomology_dim(2, 5, 3, PoissonBivector([[6, -2], [-2, 2]])) == 2


FIG1 = [[1, 0, 1], [0, 2, 0], [0, 0, 1]] + [[0, 0, 0]] * 4
FIG3_LEFT = [[1, 0, 0, 0, 1], [0, 4, 0, 0, 0], [0, 0, 6, 0, 0], [0, 0, 0, 4, 0],
             [0, 0, 0, 0, 1]] + [[0] * 5] * 4


def test_full_table_examples():
    assert full_table(1, PoissonBivector([[1]]), 6).grid() == FIG1
    assert full_table(2, PoissonBivector([[3, -1], [-1, 2]]), 8).grid() == FIG3_LEFT
    assert full_table(2, PoissonBivector([[11, -3], [-3, 2]]), 8).grid() == FIG3_LEFT


def test_parallel_table_matches_serial():
    pi = PoissonBivector([[2, 1], [1, 2]])
    assert full_table(2, pi, 5, jobs=2).grid() == full_table(2, pi, 5).grid()


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_complex_property_and_rank_nullity(name):
    cx = engine(name)
    n = cx.n
    for d in range(0, 7):
        for p in range(2 * n + 1):
            assert cx.check_complex(d, p)
            m = cx.matrix(d, p)
            assert cx.rank(d, p) + cx.nullity(d, p) == m.shape[1] == cell_dimension(n, d, p)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_euler_characteristic(name):
    cx = engine(name)
    for d in range(0, 5):
        cells, coh = euler_characteristic_check(cx, d)
        assert cells == coh


# -- representatives ---------------------------------------------------------------


def span_equal(cx, d, p, elements):
    """Classes of ``elements`` and of the representatives span the same space mod image."""
    reps = cx.representative_coordinates(d, p)
    cell = enumerate_cell(cx.n, d, p)
    ours = rref([reduce_against(r, cx.image_echelon(d, p)) for r in reps], ncols=len(cell))
    theirs = rref([cx.class_coordinates(x, d, p) for x in elements], ncols=len(cell))
    return ours.rows == theirs.rows


def test_representative_examples():
    one = PoissonBivector([[1]])
    assert cohomology_representatives(1, 2, 2, one) == [mv(1, "z*w dz^dw")]
    p2 = engine("p2")
    assert span_equal(p2, 4, 2, [mv(2, "z1^2*w2^2 dz2^dw1"), mv(2, "z2^2*w1^2 dz1^dw2")])
    euler = [mv(2, t) for t in ("z1 dz1", "z2 dz2", "w1 dw1", "w2 dw2")]
    for B in ([[1, 0], [0, 1]], [[2, 1], [1, 2]], [[3, 1], [1, "-1/2"]]):
        assert span_equal(engine(B), 1, 1, euler)


@pytest.mark.parametrize("name", ["nakanishi", "p1xp1", "p2", "hirzebruch1", "hirzebruch2"])
def test_representatives_are_valid(name):
    cx = engine(name)
    n = cx.n
    for d in range(0, 6):
        for p in range(2 * n + 1):
            reps = cx.representatives(d, p)
            assert len(reps) == cx.dim(d, p)
            cell = enumerate_cell(n, d, p)
            span = rref(cx.image_columns(d, p), ncols=len(cell))
            for x in reps:
                assert sigma(x, cx.pi).is_zero()
                rest = reduce_against(cell.coordinates(x), span)
                assert rest, "representative is exact or dependent"
                span = rref(span.rows + [rest], ncols=len(cell))


@pytest.mark.parametrize("name", ["nakanishi", "p2", "hirzebruch2"])
def test_stacked_reduction_has_identity_block_on_image_pivots(name):
    cx = engine(name)
    for d in range(0, 6):
        for p in range(2 * cx.n + 1):
            image = cx.image_echelon(d, p)
            stacked = cx.stacked_reduction(d, p)
            pos = {pc: i for i, pc in enumerate(stacked.pivots)}
            k = image.rank
            assert set(image.pivots) <= set(pos)
            block = [[stacked.rows[pos[r]].get(c, 0) for c in image.pivots] for r in image.pivots]
            assert block == [[1 if i == j else 0 for j in range(k)] for i in range(k)]


@pytest.mark.parametrize("name", ["p1xp1", "p2", "hirzebruch2"])
def test_representatives_agree_with_complement_oracle(name):
    # Independent route: reduce each kernel vector modulo the image echelon
    # form, then row reduce the remainders.
    cx = engine(name)
    for d in range(0, 6):
        for p in range(2 * cx.n + 1):
            ncols = cell_dimension(cx.n, d, p)
            image = cx.image_echelon(d, p)
            rem = [reduce_against(v, image) for v in cx.kernel_basis(d, p)]
            oracle = rref([r for r in rem if r], ncols=ncols)
            assert oracle.rows == cx.representative_coordinates(d, p)


def test_representative_leading_coefficient_is_one():
    cx = engine("hirzebruch2")
    for d in range(0, 5):
        for p in range(5):
            for x in cx.representatives(d, p):
                cell = enumerate_cell(2, d, p)
                coords = cell.coordinates(x)
                assert coords[min(coords)] == 1


# -- known columns --------------------------------------------------------------------------


@pytest.mark.parametrize("B", [[[1]], [[-3]], [["1/2"]], [[1, 0], [0, 1]], [[2, 1], [1, 2]],
                               [[1, "i"], ["-i", 2]], [[3, "1+i"], ["1-i", -1]]])
def test_h0_is_constants(B):
    cx = engine(B)
    assert [cx.dim(d, 0) for d in range(7)] == [1, 0, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("B", [[[1]], [[7]], [[1, 0], [0, 1]], [[2, 1], [1, 2]], [[5, 2], [2, -1]]])
def test_h1_is_euler_fields_symmetric(B):
    cx = engine(B)
    n = cx.n
    assert [cx.dim(d, 1) for d in range(7)] == [0, 2 * n, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("b", [1, 2, -1, "1/3", "-7/2", 5])
def test_n1_h2_column(b):
    cx = engine([[b]])
    assert [cx.dim(d, 2) for d in range(8)] == [1, 0, 1, 0, 0, 0, 0, 0]
    assert cx.representatives(0, 2) == [mv(1, "dz^dw")]
    assert cx.representatives(2, 2) == [mv(1, "z*w dz^dw")]


# -- classification -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "n, text, expected",
    [
        (1, "z*w dz^dw", I_),
        (1, "1", I_),
        (2, "z1 dz1", I_),
        (2, "z1^2*w2^2 dz2^dw1", II),
        (2, "z2^3 dz1^dw1^dw2", II),
        (1, "dz^dw", II),
        (2, "z2 dz1^dz2^dw1^dw2", III),
        (2, "z1*w2^3 dz1^dz2^dw1", III),
        (2, "z1^2 dz1", III),
        (2, "z1 dz1 + w1 dw1", GeneratorType.UNTYPED),
    ],
)
def test_classify_examples(n, text, expected):
    assert classify_generator(mv(n, text)) == expected


def test_classify_with_cocycle_condition():
    pi = PoissonBivector([[1, 0], [0, 1]])
    # w1^2 d_z1 has disjoint exponents but is not a cocycle for B = I
    x = mv(2, "w1^2 dz1")
    assert classify_generator(x) == II
    assert classify_generator(x, pi) == GeneratorType.UNTYPED


def test_hirzebruch2_generators_are_typed():
    summary = full_table(2, PoissonBivector(PRESETS["hirzebruch2"]), 6, classify=True)
    for (d, p), rec in summary.cells.items():
        assert len(rec.types) == rec.dim
        assert GeneratorType.UNTYPED not in rec.types
