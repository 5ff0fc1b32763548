"""Hermitian form data for toric Poisson structures of type (1,1).

In a distinguished chart the real structure is
``-2i sum B_pq z_p zbar_q d_zp ^ d_zbar_q``.  After complexifying
(``zbar_q -> w_q``) and dropping the ``-2i`` prefactor, which rescales the
bivector and leaves its cohomology unchanged, this is the bivector built by
:func:`build_pi`.
"""

import enum
import warnings
from dataclasses import dataclass

from .coefficients import ONE, ZERO, GaussianRational, gq, parse_gq, serialize_gq
from .exterior import DimensionError
from .schouten import PoissonBivector

__all__ = [
    "NonHermitianWarning",
    "SingularFormError",
    "HermitianForm",
    "HamiltonianKind",
    "HamiltonianClass",
    "build_pi",
    "congruence_transform",
    "hamiltonian_classify",
    "preset",
    "PRESETS",
    "determinant",
    "inverse",
    "parse_matrix",
    "format_matrix",
]


class NonHermitianWarning(UserWarning):
    """A raw (non-Hermitian) coefficient matrix was accepted."""


class SingularFormError(ValueError):
    """The form is degenerate, so pi_B is not generically non-degenerate."""


def _square(entries):
    rows = [tuple(gq(x) for x in row) for row in entries]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise DimensionError("matrix must be square and non-empty")
    return tuple(rows)


def determinant(m):
    """Exact determinant by Gaussian elimination over Q(i)."""
    a = [list(r) for r in _square(m)]
    n = len(a)
    det = ONE
    for c in range(n):
        pr = next((r for r in range(c, n) if a[r][c]), None)
        if pr is None:
            return ZERO
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            det = -det
        det = det * a[c][c]
        inv = a[c][c].inv()
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def inverse(m):
    a = [list(r) for r in _square(m)]
    n = len(a)
    aug = [row + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        pr = next((r for r in range(c, n) if aug[r][c]), None)
        if pr is None:
            raise SingularFormError("matrix is singular")
        aug[c], aug[pr] = aug[pr], aug[c]
        inv = aug[c][c].inv()
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), ZERO) for j in range(n))
        for i in range(n)
    )


def _conj_transpose(a):
    n = len(a)
    return tuple(tuple(a[j][i].conj() for j in range(n)) for i in range(n))


class HermitianForm:
    """An n x n matrix over Q(i), checked for conjugate symmetry.

    Non-Hermitian input is only accepted with ``raw=True``; it then carries
    ``hermitian == False`` and a :class:`NonHermitianWarning` is issued.
    """

    def __init__(self, entries, raw=False):
        self.entries = _square(entries)
        self.n = len(self.entries)
        self.hermitian = self.entries == _conj_transpose(self.entries)
        if not self.hermitian:
            if not raw:
                raise ValueError("matrix is not Hermitian (pass raw=True to accept it)")
            warnings.warn("using a non-Hermitian coefficient matrix", NonHermitianWarning, stacklevel=2)
        self.raw = raw
        self._det = None

    @property
    def det(self):
        if self._det is None:
            self._det = determinant(self.entries)
        return self._det

    @property
    def invertible(self):
        return bool(self.det)

    @property
    def symmetric(self):
        e = self.entries
        return all(e[p][q] == e[q][p] for p in range(self.n) for q in range(self.n))

    def scaled(self, c):
        c = gq(c)
        return HermitianForm([[x * c for x in row] for row in self.entries], raw=self.raw or not c.is_real())

    def __eq__(self, other):
        if not isinstance(other, HermitianForm):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"HermitianForm({format_matrix(self.entries)!r})"


class HamiltonianKind(enum.Enum):
    SINGLE_VALUED_TORUS_VALUED = "single_valued_torus_valued"
    FINITE_QUOTIENT_VALUED = "finite_quotient_valued"
    NOT_HAMILTONIAN = "not_hamiltonian"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class HamiltonianClass:
    """Exponents of the momentum map ``z -> (prod_j z_j^{E_jk})_k`` and their type."""

    exponent_matrix: tuple
    classification: HamiltonianKind


def build_pi(B):
    """``pi_B = sum B_pq z_p w_q d_zp ^ d_wq`` from a form (or raw matrix)."""
    if isinstance(B, HermitianForm):
        return PoissonBivector(B.entries)
    return PoissonBivector(B)


def congruence_transform(B, P):
    """``P* B P`` for an integer matrix ``P`` with ``det P = +-1`` (a chart change)."""
    n = B.n
    try:
        P = tuple(tuple(int(x) if int(x) == x else None for x in row) for row in P)
    except (TypeError, ValueError):
        raise ValueError("P must be an integer matrix") from None
    if len(P) != n or any(len(r) != n for r in P) or any(x is None for r in P for x in r):
        raise ValueError(f"P must be an integer {n}x{n} matrix")
    Pq = tuple(tuple(GaussianRational(x) for x in row) for row in P)
    if determinant(Pq) not in (ONE, -ONE):
        raise ValueError("P must be unimodular (det P = +1 or -1)")
    out = _matmul(_conj_transpose(Pq), _matmul(B.entries, Pq))
    return HermitianForm(out, raw=B.raw)


def hamiltonian_classify(B):
    """Momentum-map exponents ``conj(B^{-1})`` and whether they are integral/rational.

    Integer real exponents give a single-valued torus-valued momentum map;
    real rational exponents give one valued in a finite quotient of the torus.
    A nonzero imaginary part is read as not Hamiltonian: ``z^c`` for a
    non-real exponent is not finitely multivalued.
    """
    if not B.invertible:
        raise SingularFormError("B is degenerate; pi_B is not generically non-degenerate")
    inv = inverse(B.entries)
    exps = tuple(tuple(x.conj() for x in row) for row in inv)
    flat = [x for row in exps for x in row]
    if any(not x.is_real() for x in flat):
        kind = HamiltonianKind.NOT_HAMILTONIAN
    elif all(x.is_integer() for x in flat):
        kind = HamiltonianKind.SINGLE_VALUED_TORUS_VALUED
    else:
        kind = HamiltonianKind.FINITE_QUOTIENT_VALUED
    return HamiltonianClass(exps, kind)


def _hirzebruch(m):
    return [[2 + m * m, -m], [-m, 2]]


PRESETS = {
    "nakanishi": [[1]],
    "p1xp1": [[1, 0], [0, 1]],
    "p2": [[2, 1], [1, 2]],
    "hirzebruch1": _hirzebruch(1),
    "hirzebruch2": _hirzebruch(2),
    "hirzebruch3": _hirzebruch(3),
}


def preset(name):
    """Local forms for C, CP1 x CP1, CP2 and the Hirzebruch surfaces X_1..X_3."""
    try:
        return HermitianForm(PRESETS[name])
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; valid names: {', '.join(PRESETS)}") from None


def parse_matrix(text):
    """``"2,1;1,2"`` -> tuple of rows of GaussianRational."""
    rows = []
    for row in text.split(";"):
        rows.append(tuple(parse_gq(x) for x in row.split(",")))
    return _square(rows)


def format_matrix(m):
    return ";".join(",".join(serialize_gq(x) for x in row) for row in m)
