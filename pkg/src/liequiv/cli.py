"""Command-line interface.

Commands: verify, deteq, bracket, transform, list, system-dump.  Exit codes:
0 on success (for verify: all selected generators pass), 1 when verification
finds a failing generator, 2 on usage or input errors.  Output is
deterministic; two runs over the same inputs produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import report
from .catalog import build_catalog, find_entry
from .determining import check_entry, determining_equations, verify
from .dsl import (DslSyntaxError, UnknownCoordinateError, parse_generator,
                  print_generator)
from .expr import ExprError
from .flows import NoClosedFormError, exponentiate
from .generators import AnsatzError
from .jets import JetOrderError, UnsupportedDimensionError, build_registry
from .linsolve import InconsistentSystemError
from .system import build_system

_INPUT_ERRORS = (ExprError, JetOrderError, UnsupportedDimensionError,
                 AnsatzError, DslSyntaxError, UnknownCoordinateError,
                 NoClosedFormError, InconsistentSystemError, ValueError,
                 ZeroDivisionError, OSError)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liequiv",
        description="symbolic equivalence-generator analysis of the viscous "
                    "balance-law system")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, gen=False, param=False):
        p.add_argument("--dim", type=int, required=True, choices=(1, 2, 3))
        if gen:
            p.add_argument("--gen", required=True,
                           help="catalog name, all-theorem, all, @file.dsl, "
                                "or a DSL string")
        if param:
            p.add_argument("--param", default=None,
                           help="exact rational group parameter, e.g. 3/2")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", default=None, help="write the report to a file")

    common(sub.add_parser("verify", help="check generators infinitesimally "
                                         "and by finite transformation"), gen=True)
    common(sub.add_parser("deteq", help="emit the split determining system"),
           gen=True)
    p = sub.add_parser("bracket", help="Lie brackets over the built-in span")
    common(p)
    p.add_argument("--table", action="store_true",
                   help="full table over the verified entries")
    p.add_argument("--pair", default=None, metavar="A,B",
                   help="single bracket, e.g. X0,Y1")
    common(sub.add_parser("transform", help="pull the system back through a "
                                            "finite transformation"),
           gen=True, param=True)
    common(sub.add_parser("list", help="print the catalog in DSL syntax"))
    common(sub.add_parser("system-dump", help="print the equations"))
    return parser


def _select_generators(args, reg, catalog):
    """Resolve --gen into a list of (name, kind, spec, entry-or-None)."""
    sel = args.gen
    if sel == "all-theorem":
        return [(e.name, e.kind, e.spec, e) for e in catalog
                if e.kind == "theorem"]
    if sel == "all":
        return [(e.name, e.kind, e.spec, e) for e in catalog]
    entry = find_entry(catalog, sel)
    if entry is not None:
        return [(entry.name, entry.kind, entry.spec, entry)]
    if sel.startswith("@"):
        out = []
        with open(sel[1:], "r", encoding="utf-8") as handle:
            for idx, raw in enumerate(handle, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" in line.split("d/d")[0]:
                    label, _, body = line.partition("=")
                    name = label.strip()
                else:
                    name, body = f"user_{idx}", line
                out.append((name, "user", parse_generator(reg, body.strip()), None))
        if not out:
            raise ValueError(f"no generators found in {sel[1:]}")
        return out
    if "d/d" in sel:
        return [("user", "user", parse_generator(reg, sel), None)]
    raise ValueError(f"unknown generator selector: {sel}")


def _emit(args, payload) -> None:
    text = (report.render_json(payload) if args.format == "json"
            else report.render_text(payload))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_verify(args) -> int:
    reg = build_registry(args.dim)
    system = build_system(args.dim, reg)
    catalog = build_catalog(args.dim, reg)
    selected = _select_generators(args, reg, catalog)
    results = []
    all_pass = True
    for name, kind, spec, entry in sorted(selected, key=lambda item: item[0]):
        if entry is not None:
            verdict = check_entry(system, entry)
        else:
            verdict = verify(system, spec, name)
        ok = verdict.zero and verdict.agreement is not False
        all_pass = all_pass and ok
        results.append(report.verdict_payload(verdict, kind))
    payload = report.skeleton("verify", args.dim)
    payload["results"] = results
    payload["status"] = "pass" if all_pass else "fail"
    _emit(args, payload)
    return 0 if all_pass else 1


def _cmd_deteq(args) -> int:
    reg = build_registry(args.dim)
    system = build_system(args.dim, reg)
    catalog = build_catalog(args.dim, reg)
    selected = _select_generators(args, reg, catalog)
    payload = report.skeleton("deteq", args.dim)
    payload["results"] = [
        report.determining_payload(determining_equations(system, spec, name))
        for name, _, spec, _ in sorted(selected, key=lambda item: item[0])]
    payload["status"] = "ok"
    _emit(args, payload)
    return 0


def _combo_string(combo: dict) -> str:
    if not combo:
        return "0"
    parts = []
    for name in sorted(combo):
        c = combo[name]
        if c == 1:
            parts.append(name)
        elif c == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{c}*{name}")
    return " + ".join(parts).replace("+ -", "- ")


def _cmd_bracket(args) -> int:
    from .catalog import structure_constants, verified_entries
    reg = build_registry(args.dim)
    catalog = build_catalog(args.dim, reg)
    entries = verified_entries(catalog)
    payload = report.skeleton("bracket", args.dim)
    if args.pair:
        left, _, right = args.pair.partition(",")
        table = structure_constants(reg, entries)
        if left not in table.names or right.strip() not in table.names:
            raise ValueError(f"--pair must name two verified entries, got {args.pair}")
        right = right.strip()
        payload["left"] = left
        payload["right"] = right
        payload["value"] = _combo_string(table.cell(left, right))
    else:
        table = structure_constants(reg, entries)
        payload["basis"] = list(table.names)
        payload["closed"] = table.closed
        payload["table"] = [
            [_combo_string(table.cell(n1, n2)) for n2 in table.names]
            for n1 in table.names]
    payload["status"] = "ok"
    _emit(args, payload)
    return 0


def _cmd_transform(args) -> int:
    reg = build_registry(args.dim)
    system = build_system(args.dim, reg)
    if args.param is None:
        param = None
    else:
        try:
            param = Fraction(args.param)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"--param must be an exact rational, got {args.param!r}")
    ft = exponentiate(reg, args.gen, param)
    from .determining import finite_check
    result = finite_check(system, ft)
    payload = report.skeleton("transform", args.dim)
    payload["generator"] = args.gen
    payload["parameter"] = "a" if param is None else str(param)
    payload["maps"] = [{"coordinate": a.name, "image": str(img)}
                       for a, img in ft.images()]
    payload["equations"] = [
        {"equation": f.equation,
         "factor": f.factor if f.ok else "none (not form-invariant)",
         "image": str(ft.transform(dict(system.equations())[f.equation]))}
        for f in result.factors]
    payload["status"] = "ok"
    _emit(args, payload)
    return 0


def _cmd_list(args) -> int:
    reg = build_registry(args.dim)
    catalog = build_catalog(args.dim, reg)
    payload = report.skeleton("list", args.dim)
    payload["entries"] = [
        {"name": e.name, "kind": e.kind, "has_flow": e.has_flow,
         "dsl": print_generator(reg, e.spec)}
        for e in catalog]
    payload["status"] = "ok"
    _emit(args, payload)
    return 0


def _cmd_system_dump(args) -> int:
    reg = build_registry(args.dim)
    system = build_system(args.dim, reg)
    payload = report.skeleton("system-dump", args.dim)
    payload["equations"] = [{"name": name, "expression": str(eq)}
                            for name, eq in system.equations()]
    payload["dissipation"] = str(system.dissipation)
    payload["status"] = "ok"
    _emit(args, payload)
    return 0


_HANDLERS = {
    "verify": _cmd_verify,
    "deteq": _cmd_deteq,
    "bracket": _cmd_bracket,
    "transform": _cmd_transform,
    "list": _cmd_list,
    "system-dump": _cmd_system_dump,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except _INPUT_ERRORS as exc:
        sys.stderr.write(f"liequiv: error: {exc}\n")
        return 2


def console_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_entry()
