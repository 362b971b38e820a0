"""Command-line interface.

Exit codes: 0 valid/true, 1 violations/false, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .core import (
    InvalidStructureError,
    PartialMonoidStructure,
    StructureError,
    ValidationReport,
    detect_groupoid,
    units,
    validate_structure,
)
from .double import (
    DoubleStructure,
    ORDERINGS,
    classify_cubical,
    derive_cells,
    detect_one_object,
    detect_two_category,
    exchange_witnesses,
    validate_double,
)
from .enumeration import CapExceeded, Dedup, Emit, EnumerationRequest, Mode, run
from .generators import (
    category_to_pm,
    commutative_monoid_double,
    monoid_to_pm,
    ncube_pair_groupoid,
    pair_double_groupoid,
    pm_to_category,
)
from .morphism import CarrierMap, are_isomorphic, check_homomorphism
from .nfold import MultiStructure, cell_lattice, validate_nfold
from .textio import (
    ParseError,
    parse,
    parse_category,
    parse_monoid_table,
    serialize,
    serialize_category,
    serialize_many,
)

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, as_: Optional[str] = None):
    text = _read(path)
    try:
        return parse(text, as_)
    except ParseError as exc:
        raise ParseError(exc.message, exc.line, exc.col) from None


def _kind_name(obj) -> str:
    if isinstance(obj, PartialMonoidStructure):
        return "partial monoid"
    if isinstance(obj, DoubleStructure):
        return "double structure"
    return f"{obj.k}-fold structure"


def _emit_report(report: ValidationReport, names, fmt: str, limit: Optional[int], out, ok_text="OK") -> None:
    violations = report.violations
    shown = violations if limit is None else violations[:limit]
    if fmt == "lines":
        if not violations:
            print("OK", file=out)
        for v in shown:
            print(" ".join(["VIOLATION", v.kind.value, *(names[w] for w in v.witnesses)]), file=out)
        return
    if not violations:
        print(ok_text, file=out)
        return
    print(f"{len(violations)} violation(s)", file=out)
    for v in shown:
        where = f" [{v.where}]" if v.where else ""
        rule = f" {v.rule}" if v.rule else ""
        wit = " ".join(names[w] for w in v.witnesses)
        detail = ""
        if v.detail:
            shown_detail = [names[d] if isinstance(d, int) and 0 <= d < len(names) else str(d) for d in v.detail]
            detail = "  (" + " vs ".join(shown_detail) + ")"
        print(f"  {v.kind.value}{where}{rule}: {wit}{detail}", file=out)
    if len(shown) < len(violations):
        print(f"  ... {len(violations) - len(shown)} more", file=out)


def _validate_any(obj) -> ValidationReport:
    if isinstance(obj, PartialMonoidStructure):
        return validate_structure(obj)
    if isinstance(obj, DoubleStructure):
        return validate_double(obj)
    return validate_nfold(obj)


def cmd_validate(args, out) -> int:
    obj = _load(args.file, args.as_)
    report = _validate_any(obj)
    _emit_report(report, obj.names, args.report, args.max_violations, out, f"OK: valid {_kind_name(obj)} on {obj.n} elements")
    if args.explain and isinstance(obj, DoubleStructure) and validate_structure(obj.h).valid and validate_structure(obj.v).valid:
        nm = obj.names
        for x, y, w, z, lhs, rhs in exchange_witnesses(obj):
            print(f"EXCHANGE {nm[x]} {nm[y]} {nm[w]} {nm[z]} lhs={nm[lhs]} rhs={nm[rhs]}", file=out)
    return OK if report.valid else FAIL


def _as_double(obj) -> DoubleStructure:
    if isinstance(obj, DoubleStructure):
        return obj
    if isinstance(obj, MultiStructure) and obj.k == 2:
        return DoubleStructure(*obj.structures)
    raise UsageError("this command needs a double structure (two structure blocks)")


def cmd_classify(args, out) -> int:
    d = _as_double(_load(args.file, args.as_))
    cls = classify_cubical(d)
    order = ("ONE", "TWO", "THREE", "FOUR")
    sat = [c for c in order if c in cls.satisfied]
    if args.report == "lines":
        print("CLASSES " + " ".join(sat) if sat else "CLASSES", file=out)
        for c in order:
            if c in cls.failures:
                identity, x = cls.failures[c]
                print(f"FAIL {c} {d.names[x]}", file=out)
    else:
        print("satisfied classes: " + (", ".join(sat) if sat else "none"), file=out)
        for c in order:
            if c in cls.failures:
                identity, x = cls.failures[c]
                print(f"  class {c} fails {identity} at {d.names[x]}", file=out)
    return OK if "ONE" in cls.satisfied else FAIL


def _names_of(names, members) -> str:
    return " ".join(names[x] for x in sorted(members))


def cmd_cells(args, out) -> int:
    obj = _load(args.file, args.as_)
    nm = obj.names
    lines = args.report == "lines"
    if isinstance(obj, PartialMonoidStructure):
        u = units(obj)
        print(f"CELL units {_names_of(nm, u)}" if lines else f"units ({len(u)}): {_names_of(nm, u)}", file=out)
        return OK
    if isinstance(obj, DoubleStructure):
        cells = derive_cells(obj)
        for label, members in (("D1v", cells.d1v), ("D1h", cells.d1h), ("D0", cells.d0)):
            if lines:
                print(f"CELL {label} {_names_of(nm, members)}", file=out)
            else:
                print(f"{label} ({len(members)}): {_names_of(nm, members)}", file=out)
        if cells.report:
            _emit_report(cells.report, nm, args.report, args.max_violations, out)
            return FAIL
        return OK
    lattice = cell_lattice(obj)
    for subset, members in lattice.cells.items():
        label = "{" + ",".join(obj.axes[i] for i in sorted(subset)) + "}"
        if lines:
            print(f"CELL {label} {_names_of(nm, members)}", file=out)
        else:
            print(f"{label} ({len(members)}): {_names_of(nm, members)}", file=out)
    if lattice.report:
        _emit_report(lattice.report, nm, args.report, args.max_violations, out)
        return FAIL
    return OK


def _load_pm(path: str) -> PartialMonoidStructure:
    obj = _load(path, "pm")
    assert isinstance(obj, PartialMonoidStructure)
    return obj


def parse_map(text: str, source: PartialMonoidStructure, target: PartialMonoidStructure) -> CarrierMap:
    """``"a:b, c:d"`` (or ``a=b``) pairs, one per source element."""
    sidx = {n: i for i, n in enumerate(source.names)}
    tidx = {n: i for i, n in enumerate(target.names)}
    image: dict[int, int] = {}
    for item in text.replace(",", " ").split():
        sep = ":" if ":" in item else "=" if "=" in item else None
        if sep is None:
            raise UsageError(f"bad map entry {item!r}, expected x:y")
        a, b = item.split(sep, 1)
        if a not in sidx:
            raise UsageError(f"unknown source element {a}")
        if b not in tidx:
            raise UsageError(f"unknown target element {b}")
        if sidx[a] in image:
            raise UsageError(f"element {a} mapped twice")
        image[sidx[a]] = tidx[b]
    missing = [source.names[x] for x in range(source.n) if x not in image]
    if missing:
        raise UsageError("map is not total; missing " + " ".join(missing))
    return CarrierMap(source.n, target.n, tuple(image[x] for x in range(source.n)))


def cmd_hom(args, out) -> int:
    p1, p2 = _load_pm(args.source), _load_pm(args.target)
    f = parse_map(args.map, p1, p2)
    report = check_homomorphism(p1, p2, f)
    _emit_report(report, p1.names, args.report, args.max_violations, out, "OK: homomorphism")
    return OK if report.valid else FAIL


def cmd_iso(args, out) -> int:
    p1, p2 = _load_pm(args.first), _load_pm(args.second)
    same, witness = are_isomorphic(p1, p2)
    if same:
        pairs = " ".join(f"{p1.names[x]}:{p2.names[y]}" for x, y in enumerate(witness.image))
        print(f"ISOMORPHIC {pairs}", file=out)
        return OK
    print("NOT ISOMORPHIC", file=out)
    return FAIL


def cmd_detect(args, out) -> int:
    obj = _load(args.file, args.as_)
    nm = obj.names
    if args.kind == "groupoid":
        if isinstance(obj, PartialMonoidStructure):
            report = detect_groupoid(obj)
        elif isinstance(obj, DoubleStructure):
            report = detect_groupoid(obj.h).tagged("h").merged(detect_groupoid(obj.v).tagged("v"))
        else:
            report = ValidationReport()
            for axis, p in zip(obj.axes, obj.structures):
                report = report.merged(detect_groupoid(p).tagged(axis))
        _emit_report(report, nm, args.report, args.max_violations, out, "OK: groupoid")
        return OK if report.valid else FAIL
    d = _as_double(obj)
    if args.kind == "one-object":
        report = detect_one_object(d)
        _emit_report(report, nm, args.report, args.max_violations, out, "OK: one object")
        return OK if report.valid else FAIL
    orderings = ORDERINGS if args.ordering is None else (tuple(args.ordering),)
    any_ok = False
    for ordering in orderings:
        report = detect_two_category(d, ordering)
        label = ",".join(ordering)
        if args.report != "lines":
            print(f"ordering {label}:", file=out)
        _emit_report(report, nm, args.report, args.max_violations, out, "OK: 2-category")
        any_ok = any_ok or report.valid
    return OK if any_ok else FAIL


def cmd_gen(args, out) -> int:
    if args.what == "pair-double":
        obj = pair_double_groupoid(args.points)
    elif args.what == "ncube":
        obj = ncube_pair_groupoid(args.points, args.dims)
    else:
        if not args.table:
            raise UsageError("gen monoid needs --table FILE")
        try:
            table, names = parse_monoid_table(_read(args.table))
        except ParseError as exc:
            raise ParseError(exc.message, exc.line, exc.col) from None
        obj = commutative_monoid_double(table, names) if args.double else monoid_to_pm(table, names)
    out.write(serialize(obj))
    return OK


def cmd_enumerate(args, out) -> int:
    req = EnumerationRequest(
        k=args.size,
        mode=Mode(args.mode),
        dedup=Dedup.UP_TO_ISO if args.up_to_iso else Dedup.LABELLED,
        emit=Emit.COUNT_ONLY if args.count_only else Emit.STREAM,
        workers=args.workers,
        prune=not args.no_prune,
    )
    result = run(req)
    if args.count_only:
        print(result.count, file=out)
    else:
        out.write(serialize_many(result.structures))
    return OK


def cmd_to_category(args, out) -> int:
    out.write(serialize_category(pm_to_category(_load_pm(args.file))))
    return OK


def cmd_from_category(args, out) -> int:
    try:
        cat = parse_category(_read(args.file))
    except ParseError as exc:
        raise ParseError(exc.message, exc.line, exc.col) from None
    out.write(serialize(category_to_pm(cat)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", choices=("text", "lines"), default="text", help="output style")
    common.add_argument("--max-violations", type=int, default=None, metavar="N", help="list at most N violations")
    common.add_argument("--as", dest="as_", choices=("pm", "double", "nfold"), help="override block-count dispatch")

    parser = argparse.ArgumentParser(prog="pamono", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the axioms")
    p.add_argument("file")
    p.add_argument("--explain", action="store_true", help="list exchange-law quadruples (double structures)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", parents=[common], help="cubical-set classes of a double structure")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cells", parents=[common], help="units / emergent cells / cell lattice")
    p.add_argument("file")
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("hom", parents=[common], help="check a homomorphism")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--map", required=True, help='pairs like "a:b c:d"')
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("iso", parents=[common], help="isomorphism test")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("detect", parents=[common], help="2-category, one-object or groupoid detection")
    p.add_argument("file")
    p.add_argument("--kind", required=True, choices=("2cat", "one-object", "groupoid"))
    p.add_argument("--ordering", choices=("hv", "vh"), help="2cat: which structure plays role 1 (default both)")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("gen", help="generate a canonical instance")
    p.add_argument("what", choices=("pair-double", "ncube", "monoid"))
    p.add_argument("--points", type=int, default=2)
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--table", help="monoid table file")
    p.add_argument("--double", action="store_true", help="monoid: emit the doubled structure")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("enumerate", help="all valid structures on a small carrier")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--mode", choices=("pm", "double"), default="pm")
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-prune", action="store_true", help="debug: disable search pruning")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("to-category", parents=[common], help="partial monoid -> category presentation")
    p.add_argument("file")
    p.set_defaults(func=cmd_to_category)

    p = sub.add_parser("from-category", parents=[common], help="category presentation -> partial monoid")
    p.add_argument("file")
    p.set_defaults(func=cmd_from_category)
    return parser


def run_cli(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else OK
    if getattr(args, "ordering", None):
        args.ordering = tuple(args.ordering)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"pamono: parse error: {exc}", file=err)
        return USAGE
    except InvalidStructureError as exc:
        print(f"pamono: {exc}", file=err)
        names = exc.names or tuple(str(i) for i in range(1 + max((w for v in exc.report for w in v.witnesses), default=0)))
        _emit_report(exc.report, names, getattr(args, "report", "text"), getattr(args, "max_violations", None), out)
        return FAIL
    except (UsageError, StructureError, CapExceeded, ValueError) as exc:
        print(f"pamono: {exc}", file=err)
        return USAGE


def main() -> None:
    try:
        code = run_cli()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        code = FAIL
    sys.exit(code)
