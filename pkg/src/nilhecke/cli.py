"""Command-line entry point: ``nilhecke <verb> [options]``.

Exit status: 0 on success, 1 on a computation error (or a failed check),
2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from .errors import ComputationError, UnknownPreset
from .homogeneous import (
    coset_length_series,
    flag_poincare,
    quotient_poincare,
    tensor_square_dims,
    tensor_square_report,
)
from .invariants import (
    ModuleSpec,
    decompose_AW,
    format_matrix,
    invariants_graded,
    matrix_to_json,
    reflection_matrix,
    table_row_check,
)
from .rings import QQ, ZZ, Ring
from .rootdata import PRESETS, RootDatum, load_datum, parse_roots, preset_datum, reflection_subgroup
from .schubert import schubert_family, sw_basis, torsion_index
from .verify import CRITERIA, SUITES, run_suite

VERBS = ("schubert", "matrix", "torsion", "invariants", "decompose", "table-check", "poincare", "tensor", "verify")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilhecke", description="Divided differences, Schubert classes and Weyl invariants.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--group", help=f"preset group: {', '.join(PRESETS)}")
    p.add_argument("--datum-file", help="root datum JSON file (instead of --group)")
    p.add_argument("--ring", help="Z | Q | Z/m | Z[1/n1,1/n2,...] (default Z)")
    p.add_argument("--max-degree", type=int, default=8, help="degree bound (default 8)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--generator", type=int, help="simple reflection index for matrix")
    p.add_argument("--subgroup", help="comma-separated roots, e.g. 2e1,2e2")
    p.add_argument("--suite", default="all", help=f"verify suite: all, {', '.join(SUITES)}")
    return p


def _datum(args) -> tuple[RootDatum, str]:
    if args.group and args.datum_file:
        raise UsageError("give either --group or --datum-file, not both")
    if args.datum_file:
        try:
            datum = load_datum(args.datum_file)
        except OSError as exc:
            raise UsageError(str(exc)) from exc
        return datum, datum.name or "raw"
    if not args.group:
        raise UsageError(f"{args.verb} needs --group or --datum-file")
    datum = preset_datum(args.group)
    return datum, datum.name or args.group


def _ring(args, default: Ring | None = ZZ) -> Ring | None:
    if args.ring is None:
        return default
    try:
        return Ring.parse(args.ring)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _subgroup(args, datum):
    if not args.subgroup:
        raise UsageError(f"{args.verb} needs --subgroup")
    try:
        roots = parse_roots(args.subgroup, datum)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return reflection_subgroup(datum, roots)


def _dims_text(label: str, dims) -> str:
    return f"{label:<12}: " + " ".join(str(d) for d in dims)


# verbs ------------------------------------------------------------------------

def cmd_schubert(args):
    datum, name = _datum(args)
    fam = schubert_family(datum, _ring(args))
    if args.format == "json":
        return fam.to_json(name), 0
    lines = [f"S[{w.name()}] = {fam[w].format(datum.var_names)}" for w in fam.matrix_order()]
    return "\n".join(lines), 0


def cmd_matrix(args):
    datum, name = _datum(args)
    ring = _ring(args)
    fam = schubert_family(datum, ring)
    basis = sw_basis(datum, ring)
    if args.generator is not None and not 1 <= args.generator <= datum.nsimple:
        raise UsageError(f"--generator must be between 1 and {datum.nsimple}")
    gens = [args.generator] if args.generator is not None else list(range(1, datum.nsimple + 1))
    if args.format == "json":
        mats = [matrix_to_json(fam, basis, i, name) for i in gens]
        return (mats[0] if len(mats) == 1 else mats), 0
    order = " ".join(w.name() for w in fam.matrix_order())
    blocks = [f"basis: {order}"]
    for i in gens:
        blocks.append(f"M{i} =\n" + format_matrix(reflection_matrix(fam, basis, i), basis))
    return "\n".join(blocks), 0


def cmd_torsion(args):
    datum, name = _datum(args)
    t = torsion_index(datum)
    if args.format == "json":
        return {"group": name, "torsion_index": t}, 0
    return str(t), 0


def cmd_invariants(args):
    datum, name = _datum(args)
    ring = _ring(args)
    spec = ModuleSpec(datum, ring, [], args.max_degree)
    w = invariants_graded(spec, "W")
    idp = invariants_graded(spec, "ID")
    if args.format == "json":
        return {
            "group": name,
            "ring": str(ring),
            "max_degree": args.max_degree,
            "weyl_invariants": w.to_json(datum.var_names),
            "id_invariants": idp.to_json(datum.var_names),
        }, 0
    return "\n".join([
        _dims_text("degree", range(args.max_degree + 1)),
        _dims_text("dim A^W", w.dims(args.max_degree)),
        _dims_text("dim A^I(D)", idp.dims(args.max_degree)),
    ]), 0


def cmd_decompose(args):
    datum, name = _datum(args)
    ring = _ring(args)
    spec = ModuleSpec(datum, ring, [], args.max_degree)
    id_part, j_part = decompose_AW(spec, schubert_family(datum, ring))
    if args.format == "json":
        return {
            "group": name,
            "ring": str(ring),
            "max_degree": args.max_degree,
            "id_part": id_part.to_json(datum.var_names),
            "j_part": j_part.to_json(datum.var_names),
        }, 0
    return "\n".join([
        _dims_text("degree", range(args.max_degree + 1)),
        _dims_text("dim psi(A^W)", id_part.dims(args.max_degree)),
        _dims_text("dim A^J", j_part.dims(args.max_degree)),
    ]), 0


def cmd_table_check(args):
    if not args.group:
        raise UsageError("table-check needs --group")
    rep = table_row_check(preset_datum(args.group).name or args.group, bound=args.max_degree)
    status = 0 if rep["passed"] else 1
    if args.format == "json":
        return rep, status
    lines = [f"{rep['group']}: {'PASS' if rep['passed'] else 'FAIL'}"]
    for f in rep["forward"]:
        lines.append(f"  forward  {f['vector']} in {f['ideal']}: {'ok' if f['passed'] else 'FAIL ' + str(f['witness'])}")
    for c in rep["converse"]:
        lines.append(f"  converse F{c['prime']} {c['module']}: dims {c['actual']} expected {c['expected']}"
                     f" {'ok' if c['passed'] else 'FAIL'}")
    return "\n".join(lines), status


def cmd_poincare(args):
    datum, name = _datum(args)
    ring = _ring(args, QQ)
    if not args.subgroup:
        s = flag_poincare(datum, args.max_degree)
        if args.format == "json":
            return s.to_json(), 0
        return s.format() + (f"\nclosed form: {s.closed_form}" if s.closed_form else ""), 0
    sub = _subgroup(args, datum)
    q = quotient_poincare(datum, sub, ring, args.max_degree)
    c = coset_length_series(datum, sub, args.max_degree)
    q.warnings = list(c.warnings)
    if args.format == "json":
        return q.to_json(), 0
    lines = [q.format(), f"coset lengths: {c.format()}"] + [f"warning: {w}" for w in q.warnings]
    return "\n".join(lines), 0


def cmd_tensor(args):
    datum, name = _datum(args)
    sub = _subgroup(args, datum)
    ring = _ring(args, None)
    if ring is None:
        rep = tensor_square_report(datum, sub, args.max_degree)
    else:
        if not ring.is_field:
            raise UsageError("tensor needs a field: Q or Z/p")
        rep = {"ring": str(ring), "integral": tensor_square_dims(datum, sub, ring, args.max_degree, "integral").coeffs,
               "field": tensor_square_dims(datum, sub, ring, args.max_degree, "field").coeffs}
    if args.format == "json":
        return rep, 0
    return "\n".join(f"{k}: {v}" for k, v in rep.items()), 0


def cmd_verify(args):
    if args.datum_file:
        raise UsageError("verify runs on preset groups only")
    groups = [preset_datum(args.group).name or args.group] if args.group else None
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    names = list(SUITES) if args.suite == "all" else [args.suite]
    by_suite = {n: run_suite(n, groups) for n in names}
    ok = all(r.passed for rs in by_suite.values() for r in rs)
    number = {v: k for k, v in CRITERIA.items()}
    if args.format == "json":
        return {
            "passed": ok,
            "suites": [
                {"criterion": number[n], "suite": n, "passed": all(r.passed for r in rs),
                 "checks": [{"name": r.criterion, "passed": r.passed, "detail": r.detail} for r in rs]}
                for n, rs in by_suite.items()
            ],
        }, 0 if ok else 1
    lines = []
    for n, rs in by_suite.items():
        lines.extend(r.line() for r in rs)
    lines.append("")
    for n, rs in by_suite.items():
        passed = all(r.passed for r in rs)
        lines.append(f"{number[n]:>2}  {n:<16} {'PASS' if passed else 'FAIL'}  ({sum(r.passed for r in rs)}/{len(rs)})")
    return "\n".join(lines), 0 if ok else 1


COMMANDS = {
    "schubert": cmd_schubert,
    "matrix": cmd_matrix,
    "torsion": cmd_torsion,
    "invariants": cmd_invariants,
    "decompose": cmd_decompose,
    "table-check": cmd_table_check,
    "poincare": cmd_poincare,
    "tensor": cmd_tensor,
    "verify": cmd_verify,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.max_degree < 0:
        print("nilhecke: --max-degree must be nonnegative", file=err)
        return 2
    try:
        result, status = COMMANDS[args.verb](args)
    except (UsageError, UnknownPreset) as exc:
        print(f"nilhecke: {exc}", file=err)
        return 2
    except ComputationError as exc:
        print(f"nilhecke: {type(exc).__name__}: {exc}", file=err)
        return 1
    if args.format == "json":
        out.write(json.dumps(result, indent=2) + "\n")
    else:
        out.write(result + "\n")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
