"""Polynomial multivector fields on C^{2n}: the bigraded algebra R (x) Lambda V.

Conventions used throughout the package:

* variables are flattened as ``zeta = (z_1, ..., z_n, w_1, ..., w_n)``, so a
  monomial ``z^alpha w^beta`` is the exponent tuple ``alpha + beta`` of
  length ``2n``;
* a wedge basis element ``d_{zeta_{i_1}} ^ ... ^ d_{zeta_{i_p}}`` is the
  strictly increasing tuple ``(i_1, ..., i_p)`` of 0-based indices, so index
  ``k < n`` is ``d/dz_{k+1}`` and ``k >= n`` is ``d/dw_{k-n+1}``;
* a basis term is the pair ``(exponents, subset)``.

Cells ``R_[d] (x) Lambda^p V`` are enumerated in a fixed canonical order:
monomials by descending lexicographic order of the exponent tuple, subsets
by ascending lexicographic order, basis terms by (monomial rank, subset
rank).
"""

import re
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .coefficients import ONE, GaussianRational, gq, parse_gq, serialize_gq

__all__ = [
    "DimensionError",
    "GradingError",
    "MultiVector",
    "GradedCell",
    "monomial",
    "split_monomial",
    "merge_subsets",
    "monomials_of_degree",
    "subsets_of_size",
    "cell_dimension",
    "enumerate_cell",
    "wedge",
    "grade",
    "lambda_decompose",
    "zeta_terms",
    "var_names",
    "term_to_text",
    "parse_term",
    "parse_multivector",
]


class DimensionError(ValueError):
    """Operands live on different spaces (mismatched n or shapes)."""


class GradingError(ValueError):
    """Operand does not have the required wedge degree."""


def monomial(alpha, beta):
    """Flattened exponent tuple of ``z^alpha w^beta``."""
    if len(alpha) != len(beta):
        raise DimensionError("alpha and beta must have the same length")
    exps = tuple(int(a) for a in alpha) + tuple(int(b) for b in beta)
    if any(e < 0 for e in exps):
        raise ValueError("exponents must be non-negative")
    return exps


def split_monomial(exps):
    n = len(exps) // 2
    return exps[:n], exps[n:]


def merge_subsets(s, t):
    """Wedge ``d_s ^ d_t`` of two increasing index tuples.

    Returns ``(sign, merged)``; ``(0, None)`` if the subsets overlap.  The
    sign is the parity of the number of pairs ``(a, b)`` with ``a`` in ``s``,
    ``b`` in ``t`` and ``a > b``.
    """
    if not s:
        return 1, t
    if not t:
        return 1, s
    inversions = 0
    merged = []
    i = j = 0
    ls, lt = len(s), len(t)
    while i < ls and j < lt:
        a, b = s[i], t[j]
        if a == b:
            return 0, None
        if a < b:
            merged.append(a)
            i += 1
        else:
            merged.append(b)
            inversions += ls - i
            j += 1
    merged.extend(s[i:])
    merged.extend(t[j:])
    return (-1 if inversions & 1 else 1), tuple(merged)


class MultiVector:
    """Sparse element of ``R (x) Lambda V`` over Q(i).

    ``terms`` maps ``(exponents, subset)`` to a nonzero coefficient.  Zero
    coefficients are never stored, so equality of term maps is equality of
    multivectors.  Treat instances as immutable.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        if n < 1:
            raise DimensionError("n must be a positive integer")
        self.n = n
        clean = {}
        if terms:
            for key, c in terms.items():
                c = gq(c)
                if c:
                    exps, subset = key
                    if len(exps) != 2 * n:
                        raise DimensionError(f"monomial {exps} has wrong length for n={n}")
                    clean[(tuple(exps), tuple(subset))] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, n, terms):
        # Trusted constructor: terms already canonical and zero-free.
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, n):
        return cls._wrap(n, {})

    @classmethod
    def term(cls, n, coeff, exps, subset=()):
        """Single term ``coeff * zeta^exps * d_subset`` (subset in any order)."""
        exps = tuple(exps)
        if len(exps) != 2 * n:
            raise DimensionError(f"monomial {exps} has wrong length for n={n}")
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be non-negative")
        sign, ordered = 1, ()
        for k in subset:
            if not 0 <= k < 2 * n:
                raise ValueError(f"wedge index {k} out of range for n={n}")
            s, ordered = merge_subsets(ordered, (k,))
            if not s:
                return cls.zero(n)
            sign *= s
        c = gq(coeff) * sign
        return cls._wrap(n, {(exps, ordered): c} if c else {})

    # -- linear structure ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MultiVector):
            raise TypeError("expected a MultiVector")
        if other.n != self.n:
            raise DimensionError(f"n mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key)
            if v is None:
                out[key] = c
            else:
                v = v + c
                if v:
                    out[key] = v
                else:
                    del out[key]
        return MultiVector._wrap(self.n, out)

    def __neg__(self):
        return MultiVector._wrap(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = gq(c)
        if not c:
            return MultiVector.zero(self.n)
        return MultiVector._wrap(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, MultiVector):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coefficient(self, exps, subset=()):
        return self.terms.get((tuple(exps), tuple(subset)), GaussianRational(0))

    def sorted_terms(self):
        """Terms in canonical order (by degree, then monomial/subset rank)."""
        return sorted(
            self.terms.items(),
            key=lambda kv: (sum(kv[0][0]), len(kv[0][1]), tuple(-e for e in kv[0][0]), kv[0][1]),
        )

    def to_text(self):
        if not self.terms:
            return "0"
        return " + ".join(term_to_text(self.n, k, c) for k, c in self.sorted_terms())

    def __repr__(self):
        return f"MultiVector(n={self.n}, {self.to_text()})"


def wedge(x, y):
    """Exterior product with polynomial multiplication of coefficients."""
    if not isinstance(x, MultiVector) or not isinstance(y, MultiVector):
        raise TypeError("wedge expects MultiVectors")
    if x.n != y.n:
        raise DimensionError(f"n mismatch: {x.n} vs {y.n}")
    out = {}
    for (ex, sx), cx in x.terms.items():
        for (ey, sy), cy in y.terms.items():
            sign, merged = merge_subsets(sx, sy)
            if not sign:
                continue
            key = (tuple(a + b for a, b in zip(ex, ey)), merged)
            c = cx * cy
            if sign < 0:
                c = -c
            v = out.get(key)
            v = c if v is None else v + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return MultiVector._wrap(x.n, out)


def grade(x):
    """Set of bigrades ``(d, p)`` occurring in ``x``."""
    return {(sum(exps), len(subset)) for exps, subset in x.terms}


# -- graded cells -------------------------------------------------------------


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomials_of_degree(n, d):
    """Exponent tuples of total degree ``d`` in descending lex order."""
    if d < 0:
        return []
    # Descending first coordinate, recursively, is descending lex order.
    return list(_compositions(d, 2 * n))


def subsets_of_size(n, p):
    """Increasing index tuples of size ``p`` in ascending lex order."""
    if p < 0 or p > 2 * n:
        return []
    return list(combinations(range(2 * n), p))


def cell_dimension(n, d, p):
    """``dim R_[d] (x) Lambda^p V = C(d+2n-1, 2n-1) * C(2n, p)``."""
    if d < 0 or p < 0 or p > 2 * n:
        return 0
    return comb(d + 2 * n - 1, 2 * n - 1) * comb(2 * n, p)


@dataclass(frozen=True)
class GradedCell:
    """Finite space ``R_[d] (x) Lambda^p V`` with its canonical basis."""

    n: int
    d: int
    p: int
    basis: tuple
    index: dict = field(repr=False, compare=False)

    def __len__(self):
        return len(self.basis)

    def element(self, j, coeff=ONE):
        exps, subset = self.basis[j]
        return MultiVector._wrap(self.n, {(exps, subset): gq(coeff)})

    def coordinates(self, x):
        """Sparse coordinate dict ``{index: coeff}`` of ``x`` in this basis."""
        coords = {}
        for key, c in x.terms.items():
            j = self.index.get(key)
            if j is None:
                raise GradingError(f"term {key} does not lie in cell (d={self.d}, p={self.p})")
            coords[j] = c
        return coords

    def vector(self, coords):
        """Multivector with the given sparse coordinates (``{index: coeff}``)."""
        return MultiVector._wrap(
            self.n, {self.basis[j]: gq(c) for j, c in coords.items() if gq(c)}
        )


_CELL_CACHE = {}


def enumerate_cell(n, d, p):
    key = (n, d, p)
    cell = _CELL_CACHE.get(key)
    if cell is None:
        mons = monomials_of_degree(n, d)
        subs = subsets_of_size(n, p)
        basis = tuple((m, s) for m in mons for s in subs)
        cell = GradedCell(n, d, p, basis, {b: j for j, b in enumerate(basis)})
        _CELL_CACHE[key] = cell
    return cell


# -- zeta view and lambda decomposition -----------------------------------------


def zeta_terms(x):
    """Yield ``(coeff, mu, k)`` for each term ``coeff * zeta^mu d_{zeta_k}``."""
    for (exps, subset), c in x.terms.items():
        if len(subset) != 1:
            raise GradingError("zeta view needs wedge degree 1")
        yield c, exps, subset[0]


def lambda_decompose(x):
    """Split a vector field into pieces ``X_lambda`` with ``mu = lambda + e_k``.

    Returns a dict mapping the integer vector ``lambda`` (tuple of length
    ``2n``) to the multivector made of the matching terms.
    """
    parts = {}
    for c, mu, k in zeta_terms(x):
        lam = list(mu)
        lam[k] -= 1
        parts.setdefault(tuple(lam), {})[(mu, (k,))] = c
    return {lam: MultiVector._wrap(x.n, t) for lam, t in parts.items()}


# -- text form ------------------------------------------------------------------


def var_names(n):
    """Variable names in flattened order (``z, w`` when n=1)."""
    if n == 1:
        return ["z", "w"]
    return [f"z{k}" for k in range(1, n + 1)] + [f"w{k}" for k in range(1, n + 1)]


def term_to_text(n, key, coeff):
    """``2*z1^2*w2^2 dz2^dw1``; unit coefficients are dropped when possible."""
    exps, subset = key
    names = var_names(n)
    factors = []
    for name, e in zip(names, exps):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    coeff = gq(coeff)
    head = []
    if coeff != 1 or not (factors or subset):
        head.append(serialize_gq(coeff))
    poly = "*".join(head + factors)
    wedge_txt = "^".join("d" + names[k] for k in subset)
    return " ".join(part for part in (poly, wedge_txt) if part)


_FACTOR = re.compile(r"^([zw])(\d*)(?:\^(\d+))?$")


def _var_index(n, letter, digits, text):
    if digits:
        k = int(digits)
    elif n == 1:
        k = 1
    else:
        raise ValueError(f"variable needs an index for n={n}: {text!r}")
    if not 1 <= k <= n:
        raise ValueError(f"variable index out of range in {text!r}")
    return (k - 1) if letter == "z" else (n + k - 1)


def parse_term(n, text):
    """Inverse of :func:`term_to_text`; returns a one-term MultiVector."""
    text = text.strip()
    poly, wedge_txt = "", ""
    parts = text.split()
    if len(parts) == 2:
        poly, wedge_txt = parts
    elif len(parts) == 1:
        if parts[0].startswith("d"):
            wedge_txt = parts[0]
        else:
            poly = parts[0]
    else:
        raise ValueError(f"malformed term {text!r}")
    coeff = ONE
    exps = [0] * (2 * n)
    if poly:
        factors = poly.split("*")
        if factors[0] and factors[0][0] not in "zw":
            coeff = parse_gq(factors[0])
            factors = factors[1:]
        for f in factors:
            m = _FACTOR.match(f)
            if not m:
                raise ValueError(f"malformed monomial factor {f!r} in {text!r}")
            exps[_var_index(n, m.group(1), m.group(2), text)] += int(m.group(3) or 1)
    subset = []
    if wedge_txt:
        for w in wedge_txt.split("^"):
            m = _FACTOR.match(w[1:]) if w.startswith("d") else None
            if not m or m.group(3):
                raise ValueError(f"malformed wedge factor {w!r} in {text!r}")
            subset.append(_var_index(n, m.group(1), m.group(2), text))
    return MultiVector.term(n, coeff, exps, subset)


def parse_multivector(n, terms):
    """Sum of terms given as a list of strings or one string joined by ``' + '``."""
    if isinstance(terms, str):
        terms = [] if terms.strip() == "0" else terms.split(" + ")
    total = MultiVector.zero(n)
    for t in terms:
        total = total + parse_term(n, t)
    return total
