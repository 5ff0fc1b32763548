"""Matrices of the Poisson differential on graded cells and their cohomology.

``sigma^p_[d]`` maps the cell ``(d, p)`` to ``(d+1, p+1)``.  Its matrix is
assembled column by column in the canonical bases of
:func:`~toricpoisson.exterior.enumerate_cell`, reduced by exact Gauss-Jordan
elimination over Q(i), and

    dim H^p_[d] = nullity(sigma^p_[d]) - rank(sigma^{p-1}_[d-1]).

The matrices are extremely sparse, and sigma preserves the torus weight of
each basis term, so elimination never mixes more than a handful of rows;
plain dict-of-rows storage is enough even for cells with thousands of
columns.
"""

import enum
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .coefficients import GaussianRational
from .exterior import (
    DimensionError,
    GradedCell,
    MultiVector,
    cell_dimension,
    enumerate_cell,
    merge_subsets,
)
from .schouten import PoissonBivector, sigma

__all__ = [
    "CohomologyInvariantError",
    "SparseMatrix",
    "SigmaMatrix",
    "RREF",
    "rref",
    "reduce_against",
    "assemble_sigma_matrix",
    "PoissonComplex",
    "GeneratorType",
    "CellRecord",
    "CohomologySummary",
    "cohomology_dim",
    "cohomology_representatives",
    "classify_generator",
    "full_table",
    "euler_characteristic_check",
]


class CohomologyInvariantError(RuntimeError):
    """A structural identity of the complex failed (sign or bracket bug)."""


# -- sparse matrices ------------------------------------------------------------


class SparseMatrix:
    """Row-major sparse matrix over Q(i): ``rows[i]`` is ``{col: value}``."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise DimensionError("row count does not match nrows")
        self.rows = [{j: v for j, v in r.items() if v} for r in rows]

    @classmethod
    def from_dense(cls, dense, ncols=None):
        dense = [list(r) for r in dense]
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        rows = []
        for r in dense:
            if len(r) != ncols:
                raise DimensionError("ragged dense matrix")
            rows.append({j: GaussianRational(x) if not isinstance(x, GaussianRational) else x
                         for j, x in enumerate(r) if x})
        return cls(len(rows), ncols, rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def to_dense(self):
        zero = GaussianRational(0)
        return [[r.get(j, zero) for j in range(self.ncols)] for r in self.rows]

    def nnz(self):
        return sum(len(r) for r in self.rows)

    def is_zero(self):
        return not any(self.rows)

    def columns(self):
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self.rows:
            acc = {}
            for k, a in r.items():
                for j, b in other.rows[k].items():
                    v = acc.get(j)
                    v = a * b if v is None else v + a * b
                    if v:
                        acc[j] = v
                    else:
                        acc.pop(j, None)
            out.append(acc)
        return SparseMatrix(self.nrows, other.ncols, out)

    def __eq__(self, other):
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


@dataclass(frozen=True)
class RREF:
    """Reduced row-echelon form: nonzero rows in pivot order."""

    rows: list
    pivots: list
    ncols: int

    @property
    def rank(self):
        return len(self.pivots)

    @property
    def nullity(self):
        return self.ncols - len(self.pivots)

    def matrix(self):
        return SparseMatrix(len(self.rows), self.ncols, self.rows)

    def null_space(self):
        """Kernel basis, one vector per free column, in column order.

        The vector for free column ``f`` has ``1`` at ``f`` and ``-R[r][f]`` at
        the pivot column of each row ``r``.
        """
        pivset = set(self.pivots)
        by_free = {}
        for r, pc in zip(self.rows, self.pivots):
            for j, v in r.items():
                if j != pc:
                    by_free.setdefault(j, []).append((pc, v))
        one = GaussianRational(1)
        basis = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            vec = {f: one}
            for pc, v in by_free.get(f, ()):
                vec[pc] = -v
            basis.append(vec)
        return basis


def _as_rows(m):
    if isinstance(m, SparseMatrix):
        return [dict(r) for r in m.rows], m.ncols
    if isinstance(m, SigmaMatrix):
        return [dict(r) for r in m.matrix.rows], m.matrix.ncols
    dense = SparseMatrix.from_dense(m)
    return dense.rows, dense.ncols


def rref(m, ncols=None):
    """Exact Gauss-Jordan elimination.

    ``m`` is a :class:`SparseMatrix`, a :class:`SigmaMatrix`, a dense list of
    lists, or a list of ``{col: value}`` dicts (then ``ncols`` is required).
    Columns are scanned left to right; the pivot in each column is taken from
    the lowest-indexed not-yet-used row with a nonzero entry there.
    """
    if isinstance(m, list) and (not m or isinstance(m[0], dict)):
        if ncols is None:
            raise ValueError("ncols is required for a list of sparse rows")
        rows = [{j: v for j, v in r.items() if v} for r in m]
    else:
        rows, ncols = _as_rows(m)

    col_rows = {}
    for i, r in enumerate(rows):
        for j in r:
            col_rows.setdefault(j, set()).add(i)

    used = set()
    pivots = []
    pivot_rows = []
    for col in sorted(col_rows):
        holders = col_rows.get(col)
        if not holders:
            continue
        free = [i for i in holders if i not in used]
        if not free:
            continue
        pr = min(free)
        prow = rows[pr]
        inv = prow[col].inv()
        if inv != 1:
            for j in prow:
                prow[j] = prow[j] * inv
        for other in list(holders):
            if other == pr:
                continue
            orow = rows[other]
            factor = orow[col]
            for j, v in prow.items():
                nv = orow.get(j)
                nv = -(factor * v) if nv is None else nv - factor * v
                if nv:
                    if j not in orow:
                        col_rows.setdefault(j, set()).add(other)
                    orow[j] = nv
                else:
                    orow.pop(j, None)
                    col_rows[j].discard(other)
        used.add(pr)
        pivots.append(col)
        pivot_rows.append(prow)
    return RREF(pivot_rows, pivots, ncols)


def reduce_against(vec, echelon):
    """Remainder of ``vec`` after clearing the pivot columns of ``echelon``."""
    vec = dict(vec)
    for r, pc in zip(echelon.rows, echelon.pivots):
        c = vec.get(pc)
        if not c:
            continue
        for j, v in r.items():
            nv = vec.get(j)
            nv = -(c * v) if nv is None else nv - c * v
            if nv:
                vec[j] = nv
            else:
                vec.pop(j, None)
    return vec


# -- the differential as matrices ---------------------------------------------


@dataclass(frozen=True)
class SigmaMatrix:
    """Matrix of ``sigma^p_[d]``; column ``j`` is ``sigma(domain.basis[j])``."""

    domain: GradedCell
    codomain: GradedCell
    matrix: SparseMatrix

    @property
    def shape(self):
        return self.matrix.shape

    def column(self, j):
        return {i: r[j] for i, r in enumerate(self.matrix.rows) if j in r}

    def apply(self, coords):
        """Codomain coordinates of ``sigma`` applied to domain coordinates."""
        out = {}
        for i, r in enumerate(self.matrix.rows):
            acc = None
            for j, v in r.items():
                c = coords.get(j)
                if c:
                    acc = v * c if acc is None else acc + v * c
            if acc:
                out[i] = acc
        return out


def _check_n(n, pi):
    if n != pi.n:
        raise DimensionError(f"n={n} does not match the {pi.n}x{pi.n} matrix B")


def assemble_sigma_matrix(n, d, p, pi):
    _check_n(n, pi)
    dom = enumerate_cell(n, d, p)
    cod = enumerate_cell(n, d + 1, p + 1)
    rows = [{} for _ in range(len(cod))]
    if len(cod):
        for j, key in enumerate(dom.basis):
            image = sigma(MultiVector._wrap(n, {key: GaussianRational(1)}), pi)
            for tkey, c in image.terms.items():
                rows[cod.index[tkey]][j] = c
    return SigmaMatrix(dom, cod, SparseMatrix(len(cod), len(dom), rows))


# -- generator classification -------------------------------------------------------


class GeneratorType(enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III = "III"
    UNTYPED = "untyped"

    def __str__(self):
        return self.value


def _incidence(n, subset):
    v = [0] * (2 * n)
    for k in subset:
        v[k] = 1
    return v


def _is_type_two(exps, subset):
    return all(exps[k] == 0 for k in subset)


def classify_generator(x, pi=None):
    """Type of a single-term multivector ``c z^alpha w^beta d_z^gamma d_w^delta``.

    * I   -- ``alpha = gamma`` and ``beta = delta``;
    * II  -- ``alpha . gamma = 0`` and ``beta . delta = 0`` (and, when ``pi`` is
      given, the term is a cocycle);
    * III -- a nonzero wedge of a Type I and a Type II basis term (with the
      Type II factor a cocycle when ``pi`` is given).

    Anything else, including every multi-term element, is untyped.
    """
    if len(x.terms) != 1:
        return GeneratorType.UNTYPED
    (exps, subset), _ = next(iter(x.terms.items()))
    n = x.n
    if list(exps) == _incidence(n, subset):
        return GeneratorType.TYPE_I

    def cocycle(e, s):
        if pi is None:
            return True
        return sigma(MultiVector._wrap(n, {(tuple(e), s): GaussianRational(1)}), pi).is_zero()

    if _is_type_two(exps, subset):
        return GeneratorType.TYPE_II if cocycle(exps, subset) else GeneratorType.UNTYPED
    # Split the subset into a nonempty Type I part and a Type II remainder.
    p = len(subset)
    for mask in range(1, 1 << p):
        first = tuple(subset[i] for i in range(p) if mask >> i & 1)
        second = tuple(subset[i] for i in range(p) if not mask >> i & 1)
        rest = list(exps)
        for k in first:
            rest[k] -= 1
        if min(rest) < 0 or not _is_type_two(rest, second):
            continue
        if merge_subsets(first, second)[0] and cocycle(rest, second):
            return GeneratorType.TYPE_III
    return GeneratorType.UNTYPED


# -- cohomology ---------------------------------------------------------------------


class PoissonComplex:
    """Memoised cohomology engine for one Poisson bivector ``pi_B``.

    Cells with ``d < 0``, ``p < 0`` or ``p > 2n`` are the zero space and the
    differential into or out of them is the zero map.
    """

    def __init__(self, pi):
        if not isinstance(pi, PoissonBivector):
            pi = PoissonBivector(pi)
        self.pi = pi
        self.n = pi.n
        self._lock = threading.Lock()
        self._matrices = {}
        self._rref = {}
        self._image = {}

    def _valid(self, d, p):
        return d >= 0 and 0 <= p <= 2 * self.n

    def matrix(self, d, p):
        key = (d, p)
        m = self._matrices.get(key)
        if m is None:
            if not self._valid(d, p):
                raise DimensionError(f"cell (d={d}, p={p}) is the zero space")
            m = assemble_sigma_matrix(self.n, d, p, self.pi)
            with self._lock:
                self._matrices.setdefault(key, m)
        return m

    def reduced(self, d, p):
        """RREF of the matrix of ``sigma^p_[d]`` (rows = codomain coordinates)."""
        key = (d, p)
        r = self._rref.get(key)
        if r is None:
            r = rref(self.matrix(d, p))
            with self._lock:
                self._rref.setdefault(key, r)
        return r

    def rank(self, d, p):
        if not self._valid(d, p):
            return 0
        return self.reduced(d, p).rank

    def nullity(self, d, p):
        if not self._valid(d, p):
            return 0
        return self.reduced(d, p).nullity

    def kernel_basis(self, d, p):
        """Sparse coordinate vectors spanning ``ker sigma^p_[d]``."""
        if not self._valid(d, p):
            return []
        return self.reduced(d, p).null_space()

    def image_columns(self, d, p):
        """Columns of ``sigma^{p-1}_[d-1]`` at its pivot positions (a basis of the image in cell ``(d, p)``)."""
        if not self._valid(d - 1, p - 1) or not self._valid(d, p):
            return []
        m = self.matrix(d - 1, p - 1)
        cols = m.matrix.columns()
        return [cols[j] for j in self.reduced(d - 1, p - 1).pivots]

    def image_echelon(self, d, p):
        """RREF of the image basis inside cell ``(d, p)``."""
        key = (d, p)
        e = self._image.get(key)
        if e is None:
            e = rref(self.image_columns(d, p), ncols=cell_dimension(self.n, d, p))
            with self._lock:
                self._image.setdefault(key, e)
        return e

    def check_complex(self, d, p):
        """``sigma^p_[d] o sigma^{p-1}_[d-1] = 0`` as an exact matrix product."""
        if not self._valid(d, p) or not self._valid(d - 1, p - 1):
            return True
        return (self.matrix(d, p).matrix @ self.matrix(d - 1, p - 1).matrix).is_zero()

    def dim(self, d, p):
        if not self._valid(d, p):
            return 0
        h = self.nullity(d, p) - self.rank(d - 1, p - 1)
        if h < 0:
            raise CohomologyInvariantError(
                f"negative cohomology dimension at (d={d}, p={p}): image is not inside the kernel"
            )
        if self._valid(d - 1, p - 1):
            m = self.matrix(d, p)
            for col in self.image_columns(d, p):
                if m.apply(col):
                    raise CohomologyInvariantError(
                        f"sigma o sigma != 0 into cell (d={d + 1}, p={p + 1})"
                    )
        return h

    def representative_coordinates(self, d, p):
        """Cohomology representatives as sparse coordinate dicts in cell ``(d, p)``.

        Rows spanning the image of ``sigma^{p-1}_[d-1]`` are stacked above the
        kernel basis of ``sigma^p_[d]`` and the stack is row reduced.  Every
        pivot of the image echelon form is also a pivot of the stack, and
        those rows form an identity block on the image pivot columns.  The
        remaining nonzero rows vanish on those columns, so they span a
        complement of the image inside the kernel; they are the representatives.
        """
        if not self._valid(d, p):
            return []
        image_pivots = set(self.image_echelon(d, p).pivots)
        stacked = self.stacked_reduction(d, p)
        if stacked.rank != self.nullity(d, p) or not image_pivots <= set(stacked.pivots):
            raise CohomologyInvariantError(
                f"image is not inside the kernel at (d={d}, p={p})"
            )
        reps = [r for r, pc in zip(stacked.rows, stacked.pivots) if pc not in image_pivots]
        expected = self.dim(d, p)
        if len(reps) != expected:
            raise CohomologyInvariantError(
                f"found {len(reps)} representatives at (d={d}, p={p}), expected {expected}"
            )
        return reps

    def representatives(self, d, p):
        cell = enumerate_cell(self.n, d, p)
        return [cell.vector(r) for r in self.representative_coordinates(d, p)]

    def stacked_reduction(self, d, p):
        """RREF of image basis rows followed by kernel basis rows (the literal stacked matrix)."""
        ncols = cell_dimension(self.n, d, p)
        return rref(self.image_columns(d, p) + self.kernel_basis(d, p), ncols=ncols)

    def class_coordinates(self, x, d, p):
        """Reduce a cocycle modulo the image; zero iff ``x`` is exact."""
        cell = enumerate_cell(self.n, d, p)
        coords = cell.coordinates(x)
        if self.matrix(d, p).apply(coords):
            raise ValueError("element is not a cocycle")
        return reduce_against(coords, self.image_echelon(d, p))

    def in_representative_span(self, x, d, p):
        """True iff the class of ``x`` lies in the span of the representatives."""
        rem = self.class_coordinates(x, d, p)
        if not rem:
            return True
        reps = rref(self.representative_coordinates(d, p), ncols=cell_dimension(self.n, d, p))
        return not reduce_against(rem, reps)

    def row(self, d):
        return [self.dim(d, p) for p in range(2 * self.n + 1)]


@dataclass
class CellRecord:
    dim: int
    representatives: list = None
    types: list = None


@dataclass
class CohomologySummary:
    """Dimensions (and optionally generators) of ``H^p_[d]`` for ``d <= dmax``."""

    n: int
    B: tuple
    dmax: int
    cells: dict = field(default_factory=dict)

    def dims(self, d):
        return [self.cells[(d, p)].dim for p in range(2 * self.n + 1)]

    def grid(self):
        return [self.dims(d) for d in range(self.dmax + 1)]

    def __getitem__(self, key):
        return self.cells[key].dim


def cohomology_dim(n, d, p, pi):
    _check_n(n, pi)
    return PoissonComplex(pi).dim(d, p)


def cohomology_representatives(n, d, p, pi):
    _check_n(n, pi)
    return PoissonComplex(pi).representatives(d, p)


def _table_row(args):
    B, d, with_reps, classify = args
    cx = PoissonComplex(PoissonBivector(B))
    out = []
    for p in range(2 * cx.n + 1):
        rec = CellRecord(cx.dim(d, p))
        if with_reps or classify:
            rec.representatives = cx.representatives(d, p)
            if classify:
                rec.types = [classify_generator(x, cx.pi) for x in rec.representatives]
        out.append(rec)
    return d, out


def full_table(n, pi, dmax, representatives=False, classify=False, jobs=1, engine=None):
    """Cohomology dimensions for ``0 <= d <= dmax`` and every wedge degree.

    ``jobs > 1`` farms rows out to worker processes; the result does not
    depend on scheduling.
    """
    _check_n(n, pi)
    if dmax < 0:
        raise ValueError("dmax must be non-negative")
    summary = CohomologySummary(n, pi.B, dmax)
    if jobs > 1 and engine is None:
        tasks = [(pi.B, d, representatives, classify) for d in range(dmax + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = dict(pool.map(_table_row, tasks))
    else:
        cx = engine or PoissonComplex(pi)
        rows = {}
        for d in range(dmax + 1):
            recs = []
            for p in range(2 * n + 1):
                rec = CellRecord(cx.dim(d, p))
                if representatives or classify:
                    rec.representatives = cx.representatives(d, p)
                    if classify:
                        rec.types = [classify_generator(x, pi) for x in rec.representatives]
                recs.append(rec)
            rows[d] = recs
    for d in range(dmax + 1):
        for p, rec in enumerate(rows[d]):
            summary.cells[(d, p)] = rec
    return summary


def euler_characteristic_check(engine, d):
    """Alternating sums of cell and cohomology dimensions along ``sum_p R_[d+p] (x) Lambda^p``."""
    n = engine.n
    cells = sum((-1) ** p * cell_dimension(n, d + p, p) for p in range(2 * n + 1))
    coh = sum((-1) ** p * engine.dim(d + p, p) for p in range(2 * n + 1))
    return cells, coh
