"""Text emitters for cohomology tables and generator lists.

All numbers are written exactly (canonical Q(i) strings, integers); nothing
is ever converted to floating point.
"""

import csv
import io
import json

from .coefficients import parse_gq, serialize_gq
from .exterior import parse_multivector, term_to_text
from .graded_complex import CellRecord, CohomologySummary, GeneratorType

__all__ = [
    "ascii_table",
    "csv_table",
    "json_document",
    "summary_from_json",
    "multivector_terms",
    "ascii_generators",
    "csv_generators",
]

CORNER = "dim H_[d]^p"


def ascii_table(summary):
    """Grid with one row per d and one column per p."""
    ncol = 2 * summary.n + 1
    grid = summary.grid()
    width = max([1] + [len(str(x)) for row in grid for x in row] + [len(str(ncol - 1))])
    left = max(len(CORNER), len(str(summary.dmax)))
    header = CORNER.ljust(left) + " | " + " ".join(str(p).rjust(width) for p in range(ncol))
    lines = [header, "-" * (left + 1) + "+" + "-" * (len(header) - left - 2)]
    for d, row in enumerate(grid):
        lines.append(str(d).ljust(left) + " | " + " ".join(str(x).rjust(width) for x in row))
    return "\n".join(lines) + "\n"


def csv_table(summary):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["d"] + [f"h{p}" for p in range(2 * summary.n + 1)])
    for d, row in enumerate(summary.grid()):
        writer.writerow([d] + row)
    return buf.getvalue()


def multivector_terms(x):
    return [term_to_text(x.n, key, c) for key, c in x.sorted_terms()]


def _generator_entries(summary, cells=None):
    out = []
    keys = sorted(summary.cells) if cells is None else cells
    for d, p in keys:
        rec = summary.cells[(d, p)]
        if rec.representatives is None:
            continue
        types = rec.types or [None] * len(rec.representatives)
        for x, t in zip(rec.representatives, types):
            out.append({"d": d, "p": p, "terms": multivector_terms(x),
                        "type": str(t) if t is not None else None})
    return out


def json_document(summary, generators=False, cells=None):
    doc = {
        "n": summary.n,
        "B": [[serialize_gq(x) for x in row] for row in summary.B],
        "dmax": summary.dmax,
        "table": [{"d": d, "dims": row} for d, row in enumerate(summary.grid())],
    }
    if generators:
        doc["generators"] = _generator_entries(summary, cells)
    return json.dumps(doc, indent=2) + "\n"


def summary_from_json(text):
    """Rebuild a :class:`CohomologySummary` from :func:`json_document` output."""
    doc = json.loads(text)
    n = int(doc["n"])
    B = tuple(tuple(parse_gq(x) for x in row) for row in doc["B"])
    summary = CohomologySummary(n, B, int(doc["dmax"]))
    for entry in doc["table"]:
        for p, h in enumerate(entry["dims"]):
            summary.cells[(int(entry["d"]), p)] = CellRecord(int(h))
    for g in doc.get("generators", []):
        rec = summary.cells[(g["d"], g["p"])]
        if rec.representatives is None:
            rec.representatives, rec.types = [], []
        rec.representatives.append(parse_multivector(n, g["terms"]))
        rec.types.append(GeneratorType(g["type"]) if g.get("type") else None)
    return summary


def ascii_generators(summary, cells, classify=False):
    lines = []
    for d, p in cells:
        rec = summary.cells[(d, p)]
        lines.append(f"H^{p}_[{d}]  dim {rec.dim}")
        types = rec.types or [None] * len(rec.representatives)
        for x, t in zip(rec.representatives, types):
            text = " + ".join(multivector_terms(x))
            if classify:
                tag = "untyped" if t is GeneratorType.UNTYPED else f"Type {t}"
                text += f"    [{tag}]"
            lines.append("  " + text)
    return "\n".join(lines) + "\n"


def csv_generators(summary, cells, classify=False):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["d", "p", "index", "terms"] + (["type"] if classify else []))
    for d, p in cells:
        rec = summary.cells[(d, p)]
        types = rec.types or [None] * len(rec.representatives)
        for i, (x, t) in enumerate(zip(rec.representatives, types)):
            row = [d, p, i, " + ".join(multivector_terms(x))]
            if classify:
                row.append(str(t))
            writer.writerow(row)
    return buf.getvalue()
