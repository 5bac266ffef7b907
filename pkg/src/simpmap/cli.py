"""Command line interface.

Exit codes: 0 ok, 1 usage or parse error, 2 semantic mismatch, 3 audit failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import tda
from .audit import audit_annotation
from .complex import ComplexError
from .diagram import bottleneck_by_dim, essential_counts_match, log_scale
from .engine import run
from .formats import (ParseError, format_diagram, parse_diagram, parse_filtration,
                      parse_points, serialize_filtration)
from .oracle import NotInclusionOnly, reduce_persistence
from .validate import validate_filtration

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_AUDIT = 0, 1, 2, 3

log = logging.getLogger("simpmap")


class AuditError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_run(args) -> int:
    F = parse_filtration(Path(args.filtration).read_text())

    def audit(i, op, E):
        problems = audit_annotation(E.complex, E.ann)
        if problems:
            raise AuditError(f"op {i} ({op}): " + "; ".join(problems))

    try:
        D = run(F, keep_zero=args.keep_zero, lenient=args.lenient,
                observer=audit if args.audit else None)
    except AuditError as exc:
        print(f"audit failure: {exc}", file=sys.stderr)
        return EXIT_AUDIT
    _emit(format_diagram(D), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    F = parse_filtration(Path(args.filtration).read_text())
    try:
        D = reduce_persistence(F, keep_zero=args.keep_zero)
    except NotInclusionOnly as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    _emit(format_diagram(D), args.output)
    return EXIT_OK


def cmd_generate(args) -> int:
    cloud = parse_points(Path(args.points).read_text())
    builders = {
        "exact": tda.exact_rips_filtration,
        "sparse": tda.sparse_rips_filtration,
        "gic": tda.gic_filtration,
    }
    F = builders[args.mode](cloud, args.alpha, args.eps, args.steps, args.max_dim)
    _emit(serialize_filtration(F), args.output)
    return EXIT_OK


def cmd_bottleneck(args) -> int:
    D1 = parse_diagram(Path(args.diagram1).read_text())
    D2 = parse_diagram(Path(args.diagram2).read_text())
    if args.dims is not None:
        D1, D2 = D1.restrict(args.dims), D2.restrict(args.dims)
    if not essential_counts_match(D1, D2):
        print("essential class counts differ", file=sys.stderr)
        return EXIT_MISMATCH
    if args.log_scale:
        D1, D2 = log_scale(D1), log_scale(D2)
    per = bottleneck_by_dim(D1, D2)
    for d, value in per.items():
        print(f"dim {d}: {value:.9g}")
    print(f"{max(per.values(), default=0.0):.9g}")
    return EXIT_OK


def cmd_validate(args) -> int:
    F = parse_filtration(Path(args.filtration).read_text())
    report = validate_filtration(F, lenient=args.lenient, coning=not args.no_coning)
    for name, (passed, total) in report.summary().items():
        status = "PASS" if passed == total else "FAIL"
        print(f"{status} {name} {passed}/{total}")
    for c in report.failures():
        print(f"  op {c.op}: {c.name} {c.detail}".rstrip())
    if args.dump:
        Path(args.dump).write_text(report.engine.ann.dump())
    return EXIT_OK if report.ok else EXIT_AUDIT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simpmap", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="persistence diagram of a filtration file")
    r.add_argument("filtration")
    r.add_argument("--keep-zero", action="store_true", help="keep zero-persistence pairs")
    r.add_argument("--lenient", action="store_true", help="auto-insert missing faces")
    r.add_argument("--audit", action="store_true", help="audit annotations after every op")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_run)

    o = sub.add_parser("oracle", help="boundary-matrix reduction (inclusions only)")
    o.add_argument("filtration")
    o.add_argument("--keep-zero", action="store_true")
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("generate", help="filtration file from a point cloud")
    g.add_argument("points")
    g.add_argument("--alpha", type=float, required=True)
    g.add_argument("--eps", type=float, required=True)
    g.add_argument("--steps", type=int, required=True)
    g.add_argument("--max-dim", type=int, default=2)
    g.add_argument("--mode", choices=["exact", "sparse", "gic"], default="exact")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("bottleneck", help="bottleneck distance of two diagram files")
    b.add_argument("diagram1")
    b.add_argument("diagram2")
    b.add_argument("--log-scale", action="store_true")
    b.add_argument("--dims", type=int, nargs="+", help="only compare these dimensions")
    b.set_defaults(func=cmd_bottleneck)

    v = sub.add_parser("validate", help="replay with full audits and coning checks")
    v.add_argument("filtration")
    v.add_argument("--lenient", action="store_true")
    v.add_argument("--no-coning", action="store_true")
    v.add_argument("--dump", help="write the final annotation dump here")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # engine and parameter errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH if isinstance(exc, ComplexError) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
