"""Invariant checks run by ``toricpoisson verify``."""

from dataclasses import dataclass

from .exterior import MultiVector, enumerate_cell, parse_term, var_names
from .graded_complex import PoissonComplex, euler_characteristic_check, full_table
from .schouten import closed_sigma_monomial, closed_sigma_vector, schouten_bracket, sigma_generic
from .toric import build_pi

__all__ = ["CheckResult", "run_checks"]


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    count: int
    detail: str = ""

    @property
    def failed(self):
        return self.status == "fail"


def _closed_form_check(pi, dmax):
    n = pi.n
    count = bad = 0
    for d in range(dmax + 1):
        for p in (0, 1):
            cell = enumerate_cell(n, d, p)
            for exps, subset in cell.basis:
                alpha, beta = exps[:n], exps[n:]
                if not subset:
                    fast = closed_sigma_monomial(alpha, beta, pi)
                else:
                    k = subset[0]
                    side, idx = ("z", k + 1) if k < n else ("w", k - n + 1)
                    fast = closed_sigma_vector(alpha, beta, idx, side, pi)
                oracle = sigma_generic(MultiVector.term(n, 1, exps, subset), pi)
                count += 1
                bad += fast != oracle
    return count, bad


def _nakanishi_expected(d, p):
    return 1 if (d, p) in {(0, 0), (0, 2), (2, 2)} else 2 if (d, p) == (1, 1) else 0


def run_checks(form, dmax, engine=None):
    """Return a list of :class:`CheckResult` for the form ``B`` up to degree ``dmax``."""
    pi = build_pi(form)
    n = pi.n
    cx = engine or PoissonComplex(pi)
    results = []

    pb = schouten_bracket(pi.bivector, pi.bivector)
    results.append(CheckResult("jacobi [pi,pi]=0", "pass" if pb.is_zero() else "fail", 1))

    count, bad = _closed_form_check(pi, dmax)
    results.append(CheckResult("closed forms = generic bracket", "fail" if bad else "pass", count,
                               f"{bad} mismatches" if bad else ""))

    count = bad = 0
    for d in range(dmax + 1):
        for p in range(2 * n + 1):
            count += 1
            bad += not cx.check_complex(d, p)
    results.append(CheckResult("sigma o sigma = 0", "fail" if bad else "pass", count))

    count = bad = 0
    for d in range(dmax + 1):
        for p in range(2 * n + 1):
            m = cx.matrix(d, p)
            count += 1
            bad += cx.rank(d, p) + cx.nullity(d, p) != m.shape[1]
    results.append(CheckResult("rank + nullity = columns", "fail" if bad else "pass", count))

    count = bad = 0
    for d in range(0, max(0, dmax - 2 * n) + 1):
        cells, coh = euler_characteristic_check(cx, d)
        count += 1
        bad += cells != coh
    results.append(CheckResult("euler characteristic", "fail" if bad else "pass", count))

    if not form.invertible:
        results.append(CheckResult("H0 = C<1>", "fail", 0, "B is singular (det = 0)"))
        results.append(CheckResult("H1 = Euler fields", "fail", 0, "B is singular (det = 0)"))
    else:
        col = [cx.dim(d, 0) for d in range(dmax + 1)]
        ok = col == [1] + [0] * dmax
        results.append(CheckResult("H0 = C<1>", "pass" if ok else "fail", len(col),
                                   "" if ok else f"H0 column {col}"))
        if not form.symmetric:
            results.append(CheckResult("H1 = Euler fields", "skip", 0, "B is not symmetric"))
        else:
            col = [cx.dim(d, 1) for d in range(dmax + 1)]
            expected = [0] * (dmax + 1)
            if dmax >= 1:
                expected[1] = 2 * n
            ok = col == expected
            if ok and dmax >= 1:
                euler = [parse_term(n, f"{v} d{v}") for v in var_names(n)]
                ok = all(cx.in_representative_span(x, 1, 1) for x in euler)
            results.append(CheckResult("H1 = Euler fields", "pass" if ok else "fail", len(col),
                                       "" if ok else f"H1 column {col}"))

    if n == 1 and form.invertible:
        grid = [[cx.dim(d, p) for p in range(3)] for d in range(dmax + 1)]
        ok = grid == [[_nakanishi_expected(d, p) for p in range(3)] for d in range(dmax + 1)]
        results.append(CheckResult("n=1 table (H2 = <dz^dw, zw dz^dw>)", "pass" if ok else "fail",
                                   dmax + 1))

    scaled = full_table(n, pi.scaled(2), dmax).grid()
    ok = scaled == [cx.row(d) for d in range(dmax + 1)]
    results.append(CheckResult("scalar invariance (B vs 2B)", "pass" if ok else "fail", dmax + 1))
    return results
