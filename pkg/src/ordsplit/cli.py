"""Command-line interface: JSON documents in, JSON/text reports out.

Exit codes: 0 success, 1 query error or expectation mismatch, 2 parse or
validation error.
"""

from __future__ import annotations

import argparse
import sys
import time

from .catalog import builtin_catalog
from .document import (
    DocumentError,
    parse_document,
    render_report_json,
    render_report_text,
    run,
)
from .verdict import SaturationBudget, Window

CHECK_OPS = {
    "compatible_exists",
    "is_compatible",
    "cone_contains",
    "point_cone_contains",
    "leq",
    "validate_family",
}
LATTICE_OPS = {"lattice"}
CLASSIFY_OPS = {
    "is_rali",
    "is_strong",
    "stably_strong",
    "classify_into",
    "sclass_membership",
    "ssfl",
}
PULLBACK_OPS = {"pullback_strong"}
CLASSIFIER_OPS = {"admissible", "classifier_rali", "no_classifier_witness"}


def _add_common(p: argparse.ArgumentParser, with_doc: bool = True):
    if with_doc:
        p.add_argument("document", help="path to a problem document (JSON)")
    p.add_argument("--budget-conj", type=int, default=2, metavar="N",
                   help="conjugator word length bound (default 2)")
    p.add_argument("--budget-sum", type=int, default=6, metavar="N",
                   help="additive word length bound (default 6)")
    p.add_argument("--window", type=int, default=8, metavar="M",
                   help="integer window bound (default 8)")
    p.add_argument("--report", choices=("json", "text"), default="text")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")


def _budget(args) -> SaturationBudget:
    w = args.window
    return SaturationBudget(args.budget_conj, args.budget_sum, Window(w, 2 * w, w))


def _emit(report: dict, args) -> int:
    text = render_report_json(report) if args.report == "json" else render_report_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if (report["errors"] or report["mismatches"]) else 0


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_document(fh.read())
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ordsplit",
        description="Decide order-compatibility questions on split extensions of preordered groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("check", "run the compatibility queries of a document"),
        ("lattice", "run the compatible-cone enumeration queries"),
        ("classify", "run point-classification queries"),
        ("pullback", "run pullback-strongness queries"),
        ("classifier", "run classifier/admissibility queries"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_common(p)
    p = sub.add_parser(
        "catalog",
        aliases=["paper"],
        help="run the built-in catalog and compare against expected verdicts",
    )
    _add_common(p, with_doc=False)
    p.add_argument("--doubled", action="store_true", help="double all budgets")
    p = sub.add_parser("validate", help="parse and validate a document, run nothing")
    p.add_argument("document")
    args = parser.parse_args(argv)

    if args.command == "validate":
        try:
            doc = _load(args.document)
        except DocumentError as exc:
            print(f"invalid: {exc}", file=sys.stderr)
            return 2
        print(f"ok: {len(doc.queries)} queries")
        return 0

    ops = {
        "check": CHECK_OPS,
        "lattice": LATTICE_OPS,
        "classify": CLASSIFY_OPS,
        "pullback": PULLBACK_OPS,
        "classifier": CLASSIFIER_OPS,
        "catalog": None,
        "paper": None,
    }[args.command]

    doubled = False
    if args.command in ("catalog", "paper"):
        doc = builtin_catalog()
        budget = _budget(args)
        doubled = args.doubled
    else:
        try:
            doc = _load(args.document)
        except DocumentError as exc:
            print(f"invalid: {exc}", file=sys.stderr)
            return 2
        budget = _budget(args)

    started = time.monotonic()
    report = run(doc, budget, ops, doubled)
    report["wall_time_ms"] = int((time.monotonic() - started) * 1000)
    return _emit(report, args)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
