"""Manifest-driven command-line frontend.

Exit codes: 0 success, 2 domain error (invalid model, incompatible pair,
contact mismatch), 3 parse error.  Every report starts with a reproducibility
header carrying the tool version and the bound used; --format json emits the
same data as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import __version__
from .errors import SympsumError
from .fibersum import check_compatibility, decide_minimality
from .gw import ContactVector, purely_relative_vanishes, relative_constraint_degree
from .manifest import ManifestError, load_manifest, manifest_violations, parse_cap_label
from .spheres import enumerate_sphere_classes, reproduce_rational_table, reproduce_ruled_table

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_PARSE = 3

DEFAULT_BOUND = 4


def _bound_from_env(explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    raw = os.environ.get("SYMPSUM_BOUND")
    if raw is not None:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BOUND


def _header(bound: int) -> dict:
    return {"tool": "sympsum", "version": __version__, "bound": bound}


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    hdr = report["header"]
    print(f"sympsum {hdr['version']} (bound {hdr['bound']})")
    for line in report["lines"]:
        print(line)


def _class_str(names, coeffs) -> str:
    terms = []
    for nm, c in zip(names, coeffs):
        if c == 0:
            continue
        if c == 1:
            terms.append(f"+{nm}" if terms else nm)
        elif c == -1:
            terms.append(f"-{nm}")
        else:
            terms.append(f"{c:+d}{nm}" if terms else f"{c}{nm}")
    return "".join(terms) if terms else "0"


def cmd_validate(args) -> int:
    bound = _bound_from_env(args.bound)
    try:
        m = load_manifest(args.manifest)
    except ManifestError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    violations = manifest_violations(m)
    report = {
        "header": _header(bound),
        "command": "validate",
        "manifest": m.name,
        "violations": violations,
        "lines": [f"manifest {m.name}: " + ("valid" if not violations else "INVALID")]
        + [f"  - {v}" for v in violations],
    }
    _emit(report, args.format)
    return EXIT_OK if not violations else EXIT_DOMAIN


def cmd_enumerate(args) -> int:
    bound = _bound_from_env(args.bound)
    if args.table is not None:
        return _cmd_table(args, bound)
    try:
        m = load_manifest(args.manifest)
    except ManifestError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    violations = manifest_violations(m)
    if violations:
        print("invalid manifest: " + "; ".join(violations), file=sys.stderr)
        return EXIT_DOMAIN
    if args.square is None:
        print("--square is required unless --table is given", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        reports = enumerate_sphere_classes(m.model, args.square, bound)
    except SympsumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    names = m.model.lattice.basis_names
    rows = [
        {"coeffs": list(r.cls.coeffs), "square": r.square, "k_pairing": r.canonical_pairing}
        for r in reports
    ]
    report = {
        "header": _header(bound),
        "command": "enumerate",
        "manifest": m.name,
        "square": args.square,
        "classes": rows,
        "lines": [f"{len(rows)} sphere class(es) of square {args.square} within bound {bound}"]
        + [
            f"  {_class_str(names, r['coeffs'])}  (K·A = {r['k_pairing']})"
            for r in rows
        ],
    }
    _emit(report, args.format)
    return EXIT_OK


def _cmd_table(args, bound: int) -> int:
    if args.table == "rational":
        rows = reproduce_rational_table()
        data = [
            {
                "a": r.a,
                "delta": r.delta,
                "k": r.k,
                "coeffs": list(r.cls.coeffs),
                "basis": list(r.model.lattice.basis_names),
            }
            for r in rows
        ]
        lines = [f"{len(rows)} rows: square-(-4) sphere classes in rational manifolds"]
        for r in rows:
            lines.append(
                f"  a={r.a} δ={r.delta} k={r.k}  A = "
                f"{_class_str(r.model.lattice.basis_names, r.cls.coeffs)}"
            )
    else:
        rows = reproduce_ruled_table(bound=bound)
        data = [
            {
                "signs": list(r.signs),
                "a": r.a,
                "coeffs": list(r.representative.coeffs),
                "count": len(r.classes),
                "basis": list(r.model.lattice.basis_names),
            }
            for r in rows
        ]
        lines = [f"{len(rows)} sign families: square-(-4) spheres in a blown-up ruled manifold"]
        for r in rows:
            lines.append(
                f"  (a1..a4)={r.signs} a={r.a}  e.g. "
                f"{_class_str(r.model.lattice.basis_names, r.representative.coeffs)}"
                f"  [{len(r.classes)} classes]"
            )
    report = {
        "header": _header(bound),
        "command": "enumerate",
        "table": args.table,
        "rows": data,
        "lines": lines,
    }
    _emit(report, args.format)
    return EXIT_OK


def _witness_json(names, witness):
    if witness is None:
        return None
    if isinstance(witness, tuple):
        return [list(w.coeffs) for w in witness]
    return list(witness.coeffs)


def _witness_str(names, witness) -> str:
    if witness is None:
        return "-"
    if isinstance(witness, tuple):
        return ", ".join(_class_str(names, w.coeffs) for w in witness)
    return _class_str(names, witness.coeffs)


def cmd_minimality(args) -> int:
    bound = _bound_from_env(args.bound)
    try:
        mx = load_manifest(args.manifest)
        if args.cap is not None:
            cap_pair = parse_cap_label(args.cap).pair
            cap_name = args.cap
        elif args.other is not None:
            my = load_manifest(args.other)
            cap_pair = my.require_pair()
            cap_name = my.name
        else:
            print("either --cap or a second manifest is required", file=sys.stderr)
            return EXIT_DOMAIN
    except ManifestError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SympsumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        px = mx.require_pair()
        check_compatibility(px, cap_pair)
        verdict = decide_minimality(px, cap_pair, bound)
    except SympsumError as exc:
        print(f"incompatible pair: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    names = mx.model.lattice.basis_names
    lines = [
        f"{mx.name} + {cap_name}: {verdict.verdict}"
        + (f" (witness {_witness_str(names, verdict.witness)})" if verdict.witness else "")
        + (f" [{verdict.condition}]" if verdict.condition else "")
    ]
    lines += [f"  trace: {t}" for t in verdict.trace]
    report = {
        "header": _header(bound),
        "command": "minimality",
        "manifest": mx.name,
        "cap": cap_name,
        "verdict": verdict.verdict,
        "witness": _witness_json(names, verdict.witness),
        "condition": verdict.condition,
        "case": verdict.case,
        "trace": list(verdict.trace),
        "lines": lines,
    }
    _emit(report, args.format)
    return EXIT_OK


def cmd_gwdim(args) -> int:
    bound = _bound_from_env(args.bound)
    try:
        m = load_manifest(args.manifest)
    except ManifestError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        pair = m.require_pair()
        coeffs = [int(x) for x in args.cls.split(",")]
        A = pair.model.lattice.cls(coeffs)
        contacts = ContactVector(tuple(int(x) for x in args.contacts.split(",")))
        degree = relative_constraint_degree(pair, A, args.genus, contacts)
        verdict = purely_relative_vanishes(pair, A, args.genus)
    except (ValueError, SympsumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    names = pair.model.lattice.basis_names
    lines = [
        f"class {_class_str(names, A.coeffs)}, genus {args.genus}, contacts {contacts.orders}",
        f"relative constraint degree (real): {degree}",
        f"vanishing: {verdict.verdict}" + (f" ({verdict.reason})" if verdict.reason else ""),
    ]
    report = {
        "header": _header(bound),
        "command": "gwdim",
        "manifest": m.name,
        "class": list(A.coeffs),
        "genus": args.genus,
        "contacts": list(contacts.orders),
        "degree": degree,
        "verdict": verdict.verdict,
        "reason": verdict.reason,
        "lines": lines,
    }
    _emit(report, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sympsum",
        description="Lattice models of symplectic 4-manifolds: enumeration and minimality decisions.",
    )
    p.add_argument("--version", action="version", version=f"sympsum {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--bound", type=int, default=None, help="coefficient box bound (env SYMPSUM_BOUND, default 4)")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("validate", help="check a manifest's structural invariants")
    sp.add_argument("manifest")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("enumerate", help="enumerate sphere classes or reproduce a table")
    sp.add_argument("manifest", nargs="?")
    sp.add_argument("--square", type=int, default=None)
    sp.add_argument("--table", choices=("rational", "ruled"), default=None)
    common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("minimality", help="decide minimality of a sphere sum")
    sp.add_argument("manifest")
    sp.add_argument("other", nargs="?", help="manifest of the second summand")
    sp.add_argument("--cap", default=None, help="cp2_h | cp2_2h | bundle_fiber:G[:twisted] | bundle_section:N")
    common(sp)
    sp.set_defaults(func=cmd_minimality)

    sp = sub.add_parser("gwdim", help="relative constraint degree and vanishing verdict")
    sp.add_argument("manifest")
    sp.add_argument("--class", dest="cls", required=True, help="comma-separated coefficients")
    sp.add_argument("--genus", type=int, default=0)
    sp.add_argument("--contacts", required=True, help="comma-separated contact orders")
    common(sp)
    sp.set_defaults(func=cmd_gwdim)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "enumerate" and args.table is None and args.manifest is None:
        print("a manifest path is required unless --table is given", file=sys.stderr)
        return EXIT_DOMAIN
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
