"""Schouten-Nijenhuis bracket and the Poisson differential.

The bracket is computed term by term in the super-function picture, with
one odd variable ``xi_i`` standing for ``d/dzeta_i``::

    [X, Y] = sum_i (X <-d/dxi_i)(d/dzeta_i Y)
             - (-1)^{(p-1)(q-1)} sum_i (Y <-d/dxi_i)(d/dzeta_i X)

where ``<-d/dxi_i`` is the right odd derivative.  This is the convention in
which ``[X, f] = X(f)`` for a vector field ``X`` and the differential
``sigma(Y) = [Y, pi]`` reproduces the closed forms implemented below.
"""

from .coefficients import GaussianRational, gq
from .exterior import DimensionError, MultiVector, merge_subsets

__all__ = [
    "PoissonBivector",
    "schouten_bracket",
    "sigma",
    "sigma_generic",
    "closed_sigma_monomial",
    "closed_sigma_vector",
]


def _bracket_terms(ka, ca, kb, cb, out, eps_sign):
    """Accumulate the first sum for a term pair: (A <-d/dxi_i)(d_i B)."""
    ea, sa = ka
    eb, sb = kb
    p = len(sa)
    for pos, i in enumerate(sa):
        e = eb[i]
        if not e:
            continue
        rest = sa[:pos] + sa[pos + 1:]
        sign, merged = merge_subsets(rest, sb)
        if not sign:
            continue
        if (p - 1 - pos) & 1:
            sign = -sign
        sign *= eps_sign
        exps = list(ea)
        for k, v in enumerate(eb):
            exps[k] += v
        exps[i] -= 1
        key = (tuple(exps), merged)
        c = ca * cb * e
        if sign < 0:
            c = -c
        v = out.get(key)
        v = c if v is None else v + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)


def schouten_bracket(x, y):
    """``[x, y]`` for polynomial multivector fields (bilinear, graded)."""
    if not isinstance(x, MultiVector) or not isinstance(y, MultiVector):
        raise TypeError("schouten_bracket expects MultiVectors")
    if x.n != y.n:
        raise DimensionError(f"n mismatch: {x.n} vs {y.n}")
    out = {}
    for kx, cx in x.terms.items():
        p = len(kx[1])
        for ky, cy in y.terms.items():
            q = len(ky[1])
            _bracket_terms(kx, cx, ky, cy, out, 1)
            eps = -1 if ((p - 1) * (q - 1)) & 1 else 1
            _bracket_terms(ky, cy, kx, cx, out, -eps)
    return MultiVector._wrap(x.n, out)


class PoissonBivector:
    """``pi_B = sum_{p,q} B_pq z_p w_q d_{z_p} ^ d_{w_q}`` for an n x n matrix B.

    The ``-2i`` prefactor of the real structure is not included; scaling the
    bivector does not change its cohomology.
    """

    __slots__ = ("n", "B", "bivector", "_cols")

    def __init__(self, B):
        rows = [tuple(gq(x) for x in row) for row in B]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionError("B must be a non-empty square matrix")
        self.n = n
        self.B = tuple(rows)
        self._cols = tuple(tuple(rows[p][q] for p in range(n)) for q in range(n))
        terms = {}
        for p in range(n):
            for q in range(n):
                c = rows[p][q]
                if c:
                    exps = [0] * (2 * n)
                    exps[p] += 1
                    exps[n + q] += 1
                    terms[(tuple(exps), (p, n + q))] = c
        self.bivector = MultiVector._wrap(n, terms)

    def row(self, p):
        return self.B[p]

    def col(self, q):
        return self._cols[q]

    def scaled(self, c):
        c = gq(c)
        return PoissonBivector([[x * c for x in row] for row in self.B])

    def __eq__(self, other):
        return isinstance(other, PoissonBivector) and self.B == other.B

    def __hash__(self):
        return hash(self.B)

    def __repr__(self):
        rows = ";".join(",".join(str(x) for x in row) for row in self.B)
        return f"PoissonBivector({rows!r})"


def _dot(vec, exps):
    total = GaussianRational(0)
    for v, e in zip(vec, exps):
        if e:
            total = total + v * e
    return total


def _euler_combination(n, alpha, beta, beta_shift, alpha_shift, pi):
    """Coefficients of ``sum_p (row_p . beta') z_p d_zp - sum_q (col_q . alpha') w_q d_wq``."""
    zc = [_dot(pi.row(p), beta_shift) for p in range(n)]
    wc = [-_dot(pi.col(q), alpha_shift) for q in range(n)]
    return zc + wc


def closed_sigma_monomial(alpha, beta, pi):
    """``sigma(z^alpha w^beta)`` from the closed form, as a MultiVector."""
    n = pi.n
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) != n or len(beta) != n:
        raise DimensionError("exponent vectors must have length n")
    coeffs = _euler_combination(n, alpha, beta, beta, alpha, pi)
    base = alpha + beta
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            exps = list(base)
            exps[k] += 1
            terms[(tuple(exps), (k,))] = c
    return MultiVector._wrap(n, terms)


def closed_sigma_vector(alpha, beta, k, which, pi):
    """``sigma(z^alpha w^beta d_{z_k})`` (``which='z'``) or ``... d_{w_k}`` (``'w'``).

    ``k`` is 1-based as in ``d_{z_1}``.  The result is the basis element wedged
    with an Euler combination whose shifted exponent is ``alpha - e_k`` on the
    z-side or ``beta - e_k`` on the w-side.
    """
    n = pi.n
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) != n or len(beta) != n:
        raise DimensionError("exponent vectors must have length n")
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    if which == "z":
        a_shift = tuple(a - (1 if j == k - 1 else 0) for j, a in enumerate(alpha))
        coeffs = _euler_combination(n, alpha, beta, beta, a_shift, pi)
        idx = k - 1
    elif which == "w":
        b_shift = tuple(b - (1 if j == k - 1 else 0) for j, b in enumerate(beta))
        coeffs = _euler_combination(n, alpha, beta, b_shift, alpha, pi)
        idx = n + k - 1
    else:
        raise ValueError("which must be 'z' or 'w'")
    base = alpha + beta
    terms = {}
    for j, c in enumerate(coeffs):
        if not c or j == idx:
            continue
        exps = list(base)
        exps[j] += 1
        sign, merged = merge_subsets((idx,), (j,))
        terms[(tuple(exps), merged)] = c if sign > 0 else -c
    return MultiVector._wrap(n, terms)


def sigma_generic(y, pi):
    """``[y, pi]`` through the general bracket; the oracle for the fast paths."""
    return schouten_bracket(y, pi.bivector)


def sigma(y, pi):
    """Poisson differential ``sigma(y) = [y, pi]``.

    Terms of wedge degree 0 and 1 use the closed forms; higher wedge degrees
    go through the general bracket.
    """
    if y.n != pi.n:
        raise DimensionError(f"n mismatch: {y.n} vs {pi.n}")
    n = pi.n
    out = MultiVector.zero(n)
    rest = {}
    for (exps, subset), c in y.terms.items():
        alpha, beta = exps[:n], exps[n:]
        if not subset:
            part = closed_sigma_monomial(alpha, beta, pi)
        elif len(subset) == 1:
            k = subset[0]
            if k < n:
                part = closed_sigma_vector(alpha, beta, k + 1, "z", pi)
            else:
                part = closed_sigma_vector(alpha, beta, k - n + 1, "w", pi)
        else:
            rest[(exps, subset)] = c
            continue
        out = out + part.scale(c)
    if rest:
        out = out + schouten_bracket(MultiVector._wrap(n, rest), pi.bivector)
    return out
