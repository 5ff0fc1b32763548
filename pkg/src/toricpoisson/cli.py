"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input parse error,
3 dimension/shape error.
"""

import argparse
import json
import sys
import warnings

from .coefficients import GQParseError
from .exterior import DimensionError
from .formats import (
    ascii_generators,
    ascii_table,
    csv_generators,
    csv_table,
    json_document,
)
from .graded_complex import CellRecord, CohomologySummary, PoissonComplex, classify_generator, full_table
from .toric import PRESETS, HermitianForm, NonHermitianWarning, build_pi, format_matrix, parse_matrix, preset
from .verification import run_checks

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_SHAPE = 0, 1, 2, 3

# Cells grow like C(d+3, 3) * C(4, p) for n = 2.
MEMORY_WARNING_DMAX = 14


class InputError(Exception):
    pass


class ShapeError(Exception):
    pass


def _add_common(sub, dmax_default=8):
    sub.add_argument("--n", type=int, help="number of z/w variable pairs")
    src = sub.add_mutually_exclusive_group(required=True)
    src.add_argument("--b", metavar="MATRIX", help='coefficient matrix, e.g. "2,1;1,2"')
    src.add_argument("--preset", choices=sorted(PRESETS), help="named matrix from the catalog")
    sub.add_argument("--dmax", type=int, default=dmax_default, help="largest homogeneous degree")
    sub.add_argument("--format", choices=("ascii", "csv", "json"), default="ascii")
    sub.add_argument("--raw", action="store_true", help="accept a non-Hermitian matrix")
    sub.add_argument("--jobs", type=int, default=1, help="worker processes")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="toricpoisson",
        description="Algebraic Poisson cohomology of quadratic toric Poisson structures.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    t = subs.add_parser("table", help="dimension table of H^p_[d]")
    _add_common(t)

    g = subs.add_parser("generators", help="cohomology representatives")
    _add_common(g)
    g.add_argument("--d", type=int, help="homogeneous degree of the cell")
    g.add_argument("--p", type=int, help="wedge degree of the cell")
    g.add_argument("--classify", action="store_true", help="tag Type I/II/III generators")

    v = subs.add_parser("verify", help="run the invariant checks")
    _add_common(v, dmax_default=6)

    subs.add_parser("preset-list", help="list the preset matrices")
    return parser


def _resolve_form(args):
    if args.preset:
        form = preset(args.preset)
    else:
        try:
            entries = parse_matrix(args.b)
        except GQParseError as exc:
            raise InputError(f"cannot parse matrix entry: {exc}") from None
        except DimensionError as exc:
            raise ShapeError(str(exc)) from None
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonHermitianWarning)
            try:
                form = HermitianForm(entries, raw=args.raw)
            except ValueError as exc:
                raise InputError(str(exc)) from None
        if not form.hermitian:
            print("warning: B is not Hermitian (raw mode)", file=sys.stderr)
    if args.n is not None and args.n != form.n:
        raise ShapeError(f"--n {args.n} does not match the {form.n}x{form.n} matrix")
    if args.dmax < 0:
        raise ShapeError("--dmax must be non-negative")
    if args.jobs < 1:
        raise InputError("--jobs must be at least 1")
    if form.n >= 2 and args.dmax > MEMORY_WARNING_DMAX:
        print(f"warning: dmax={args.dmax} builds very large cells; expect high memory use",
              file=sys.stderr)
    return form


def run_table(args, out):
    form = _resolve_form(args)
    pi = build_pi(form)
    summary = full_table(form.n, pi, args.dmax, jobs=args.jobs)
    if args.format == "csv":
        out.write(csv_table(summary))
    elif args.format == "json":
        out.write(json_document(summary))
    else:
        out.write(f"B = {format_matrix(form.entries)}\n")
        out.write(ascii_table(summary))
    return EXIT_OK


def run_generators(args, out):
    form = _resolve_form(args)
    n = form.n
    if (args.d is None) != (args.p is None):
        raise InputError("--d and --p must be given together")
    if args.p is not None and not 0 <= args.p <= 2 * n:
        raise ShapeError(f"--p must lie in 0..{2 * n}")
    if args.d is not None and args.d < 0:
        raise ShapeError("--d must be non-negative")
    pi = build_pi(form)
    if args.d is None:
        summary = full_table(n, pi, args.dmax, representatives=True, classify=args.classify, jobs=args.jobs)
        cells = [(d, p) for d in range(args.dmax + 1) for p in range(2 * n + 1)
                 if summary.cells[(d, p)].dim]
    else:
        cx = PoissonComplex(pi)
        summary = CohomologySummary(n, pi.B, args.d)
        for d in range(args.d + 1):
            for p in range(2 * n + 1):
                summary.cells[(d, p)] = CellRecord(cx.dim(d, p))
        rec = summary.cells[(args.d, args.p)]
        rec.representatives = cx.representatives(args.d, args.p)
        if args.classify:
            rec.types = [classify_generator(x, pi) for x in rec.representatives]
        cells = [(args.d, args.p)]
    if args.format == "csv":
        out.write(csv_generators(summary, cells, args.classify))
    elif args.format == "json":
        out.write(json_document(summary, generators=True, cells=cells))
    else:
        out.write(ascii_generators(summary, cells, args.classify))
    return EXIT_OK


def run_verify(args, out):
    form = _resolve_form(args)
    results = run_checks(form, args.dmax)
    failed = any(r.failed for r in results)
    if args.format == "json":
        out.write(json.dumps({
            "B": format_matrix(form.entries),
            "dmax": args.dmax,
            "checks": [r.__dict__ for r in results],
            "ok": not failed,
        }, indent=2) + "\n")
    else:
        for r in results:
            line = f"{r.status.upper():4}  {r.name}  [{r.count}]"
            if r.detail:
                line += f"  {r.detail}"
            out.write(line + "\n")
        out.write(("FAILED" if failed else "OK") + "\n")
    return EXIT_VERIFY if failed else EXIT_OK


def run_preset_list(args, out):
    for name, entries in PRESETS.items():
        out.write(f"{name:12} {format_matrix(HermitianForm(entries).entries)}\n")
    return EXIT_OK


COMMANDS = {
    "table": run_table,
    "generators": run_generators,
    "verify": run_verify,
    "preset-list": run_preset_list,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ShapeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE


if __name__ == "__main__":
    sys.exit(main())
