"""Command-line interface: synthesize, solve, verify, and query the catalog.

Every output is exact; exit status 0 means all requested verifications
passed.
"""

from __future__ import annotations

import argparse
import sys

from gmpy2 import mpq

from .catalog import (CATALOG, CATALOG_BY_NAME, label_field, synthesize_record)
from .errors import SexticsError
from .export import parse_catalog, render_catalog, render_record
from .lattice import diag, splitting_counts, vinberg_steps, zariski_orbits
from .numfield import QQ, NumberField, _parse_poly_text, _poly_text
from .poly import MultiPoly, poly_from_string
from .singular import (PlaneCurve, ade_multiset, component_screen,
                       find_singular_points, singularity_string, total_milnor)

XYZ = ("x1", "x2", "x3")


def _cmd_synthesize(args):
    rec = synthesize_record(args.label, with_j0=args.j0)
    print(render_record(rec))
    v = rec.verification
    ok = (v["total_milnor"] == 19
          and v["singularities"] == _canonical(args.label)
          and v["component_screen"]["no_line_component"])
    print(f"\nverification: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def _canonical(name):
    from .singular import parse_singularity_string, singularity_string
    return singularity_string(parse_singularity_string(name))


def _cmd_solve(args):
    from .solver import (build_constraint_system, cluster_matches_label,
                         solve_system)
    system = build_constraint_system(args.family, args.target)
    print(system)
    clusters = solve_system(system, max_cluster_degree=args.max_degree)
    status = 1
    for c in clusters:
        names = [n for n, l in CATALOG_BY_NAME.items()
                 if l.family == args.family and cluster_matches_label(c, l)]
        print(f"  {c} -> {names if names else 'unlisted'}")
        if args.target in names:
            status = 0
    if args.audit:
        for entry in system.audit:
            print("  audit:", entry)
    return status


def _cmd_verify(args):
    field = QQ
    poly_text = None
    with open(args.input) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("field "):
                body = line[len("field "):].strip()
                if body != "QQ":
                    name = next(ch for ch in body if ch.isalpha())
                    field = NumberField(_parse_poly_text(body, name), name=name)
            elif line.startswith("sextic "):
                poly_text = line[len("sextic "):].strip()
            else:
                poly_text = line
    if poly_text is None:
        print("no polynomial found in input", file=sys.stderr)
        return 2
    F = poly_from_string(poly_text, XYZ, field)
    curve = PlaneCurve(F)
    reports = find_singular_points(curve)
    print(f"degree {curve.degree} curve over {field}")
    for r in reports:
        print(f"  {r.ade} x{r.orbit_size} at chart {r.chart}, mu={r.milnor}")
    mu = total_milnor(reports)
    print(f"singularities: {singularity_string(reports) if reports else 'smooth'}")
    print(f"total Milnor number: {mu}")
    scr = component_screen(curve, reports)
    print(f"line components: {'none found' if scr['no_line_component'] else 'FOUND'}")
    print(f"maximizing: {'yes' if mu == 19 else 'no'}")
    return 0


def _cmd_lattice(args):
    name = args.set
    counts = splitting_counts(name)
    steps = vinberg_steps(name)
    print(f"{name}: lines={counts[0]} conics={counts[1]} cubics={counts[2]}")
    print(f"  walk vectors: step2={len(steps['step2'])} "
          f"step4={len(steps['step4'])} step6={len(steps['step6'])} "
          f"genus0={len(steps['genus_zero'])}")
    return 0


def _cmd_zariski(args):
    a, b = (int(x) for x in args.gram.split(","))
    orbits = zariski_orbits(diag(a, b))
    print(f"diag({a},{b}): {len(orbits)} orbit(s) of characteristic classes")
    for rep, orbit in orbits:
        print(f"  representative {rep}, orbit {orbit}")
    return 0


def _cmd_invariants(args):
    rec = synthesize_record(args.label, with_j0=True)
    v = rec.verification
    from .numfield import format_element
    print(f"{args.label}:")
    print(f"  J  = {format_element(v['J'])}")
    print(f"  J minimal polynomial: {_poly_text(v['J_min_poly'], 'z')}")
    if v.get("j0") is None:
        print(f"  j0 not defined ({v.get('j0_error', 'no extra critical value')})")
    else:
        print(f"  j0 = {format_element(v['j0'])}")
        print(f"  j0 minimal polynomial: {_poly_text(v['j0_min_poly'], 'z')}")
    return 0


def _cmd_export(args):
    labels = args.labels.split(",") if args.labels else [l.name for l in CATALOG]
    records = []
    failures = 0
    for name in labels:
        try:
            records.append(synthesize_record(name.strip(), with_j0=False))
        except SexticsError as exc:
            failures += 1
            print(f"# {name}: FAILED {exc}", file=sys.stderr)
    text = render_catalog(records, fmt=args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        print(text)
    if args.format == "machine":
        parsed = parse_catalog(text)
        assert len(parsed) == len(records), "round-trip lost records"
    return 0 if not failures else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="sextics",
        description="Exact catalog of maximizing plane sextic curves")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synthesize", help="build and verify one catalog curve")
    p.add_argument("--label", required=True)
    p.add_argument("--j0", action="store_true", help="also compute j0")
    p.set_defaults(fn=_cmd_synthesize)

    p = sub.add_parser("solve", help="re-derive parameters for a target")
    p.add_argument("--family", required=True,
                   choices=("TwoA3", "A5A1", "A3TwoA1"))
    p.add_argument("--target", required=True)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--audit", action="store_true")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("verify", help="classify an arbitrary sextic from a file")
    p.add_argument("--input", required=True)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("lattice", help="splitting-curve counts for a label")
    p.add_argument("--set", required=True)
    p.set_defaults(fn=_cmd_lattice)

    p = sub.add_parser("zariski", help="orbit count for a rank-2 lattice")
    p.add_argument("--gram", required=True, metavar="a,b")
    p.set_defaults(fn=_cmd_zariski)

    p = sub.add_parser("invariants", help="J and j0 for a catalog label")
    p.add_argument("--label", required=True)
    p.set_defaults(fn=_cmd_invariants)

    p = sub.add_parser("export", help="render the catalog")
    p.add_argument("--format", choices=("human", "machine"), default="machine")
    p.add_argument("--labels", help="comma-separated subset")
    p.add_argument("--output")
    p.set_defaults(fn=_cmd_export)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SexticsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
