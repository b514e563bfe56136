"""Command-line surface: build tables, run verification suites, inspect orbits,
and process custom algebra spec files."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import triangular as tri
from .algebra import (
    is_singular,
    load_algebra_file,
    orbit_census,
    regular_orbit_counts,
)
from .errors import (
    AlgebraValidationError,
    BadSize,
    GroupTooLarge,
    NotPrime,
    SpaceTooLarge,
    SupcharError,
)
from .fields import field_make
from .superclasses import (
    DEFAULT_GROUP_BOUND,
    predicted_count,
    superclass_partition,
)
from .supercharacters import (
    ClassFunction,
    axioms_report,
    build_table,
    enumerate_labels,
    restriction_check,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_CONFIG = 2
EXIT_TOO_LARGE = 3


def _bound(args) -> int:
    if args.bound is not None:
        return args.bound
    env = os.environ.get("SUPCHAR_BOUND")
    if env:
        return int(env)
    return DEFAULT_GROUP_BOUND


def _field(args):
    return field_make(args.p, args.k)


def _write(path, text):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_table(table, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(table.to_json(), indent=2, sort_keys=True) + "\n"
    return table.to_csv()


def cmd_table(args) -> int:
    bound = _bound(args)
    F = _field(args)
    if args.mode == "closed":
        _write(args.out, _render_table(tri.table(args.n, F, "closed", bound), args.format))
        return EXIT_OK
    if args.mode == "brute":
        _write(args.out, _render_table(
            tri.table(args.n, F, "brute", bound, jobs=args.jobs), args.format))
        return EXIT_OK
    # mode both: build both, diff, write the closed table plus a report
    spec = tri.make_triangular(args.n, F)
    partition = superclass_partition(spec, bound)
    class_labels, _ = tri.labels(args.n, F)
    mapping = tri.class_record_map(spec, args.n, class_labels, partition)
    sizes = [partition[i].size for i in mapping]
    closed = tri.closed_table(args.n, F, sizes)
    brute = tri.brute_table(args.n, F, bound, jobs=args.jobs,
                            partition=partition, spec=spec)
    diffs = tri.compare_tables(closed, brute)
    _write(args.out, _render_table(closed, args.format))
    report = args.diff_out or (args.out + ".diff" if args.out else None)
    lines = [f"CHECK oracle-equivalence {'PASS' if not diffs else 'FAIL'} "
             f"{len(diffs)} mismatched entries of "
             f"{len(closed.row_labels) * len(closed.col_labels)}"]
    lines += diffs
    text = "\n".join(lines) + "\n"
    if report:
        _write(report, text)
    else:
        sys.stderr.write(text)
    return EXIT_OK if not diffs else EXIT_CHECK_FAILED


def _report(results) -> int:
    ok = True
    for r in results:
        print(f"CHECK {r.name} {'PASS' if r.passed else 'FAIL'} {r.details}")
        ok = ok and r.passed
    return EXIT_OK if ok else EXIT_CHECK_FAILED


class _Check:
    def __init__(self, name, passed, details=""):
        self.name = name
        self.passed = passed
        self.details = details


def _verify_checks(spec, n, F, selected, bound, jobs):
    results = []
    partition = superclass_partition(spec, bound)
    census_j = orbit_census(spec, "J")
    census_d = orbit_census(spec, "J*")
    labels = enumerate_labels(spec, census_d)

    if "counts" in selected:
        pred = predicted_count(spec, census_j)
        ok = pred == len(partition) == len(labels)
        detail = f"predicted {pred} = classes {len(partition)} = characters {len(labels)}"
        if n is not None:
            cls, chs = tri.labels(n, F)
            ok = ok and len(cls) == len(partition) and len(chs) == len(labels)
            detail += f" = closed-form labels {len(cls)}"
        results.append(_Check("counts", ok, detail))

    if "orbits" in selected:
        ok = (census_j.residual == 0 and census_d.residual == 0
              and census_j.n_e == census_d.n_e)
        results.append(_Check("orbits", ok,
                              f"n(J)={census_j.n} n_E(J)={census_j.n_e} "
                              f"n(J*)={census_d.n} n_E(J*)={census_d.n_e} "
                              f"residuals {census_j.residual},{census_d.residual}"))

    table = None
    if "axioms" in selected or "restriction" in selected:
        table = build_table(spec, partition, labels, bound, jobs=jobs)

    if "axioms" in selected:
        results.extend(axioms_report(spec, table, partition))

    if "oracle" in selected:
        if n is None:
            results.append(_Check("oracle", True, "skipped: no closed form for custom algebras"))
        else:
            diffs = tri.compare_tables(tri.table(n, F, "closed", bound),
                                       tri.table(n, F, "brute", bound, jobs=jobs))
            results.append(_Check("oracle", not diffs, f"{len(diffs)} mismatched entries"))

    if "restriction" in selected:
        ok = True
        detail = f"{len(labels)} characters restricted to 1+J"
        for lbl, row in zip(labels, table.values):
            cf = ClassFunction(tuple(row), None)
            passed, _ = restriction_check(spec, lbl, cf, partition)
            if not passed:
                ok = False
                detail = f"decomposition failed for {lbl.render()}"
                break
        results.append(_Check("restriction", ok, detail))
    return results


def cmd_verify(args) -> int:
    bound = _bound(args)
    all_checks = ["counts", "orbits", "axioms", "oracle", "restriction"]
    selected = all_checks if args.checks == ["all"] else args.checks
    bad = [c for c in selected if c not in all_checks]
    if bad:
        print(f"unknown checks: {bad}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    if args.spec:
        spec = load_algebra_file(args.spec)
        n = F = None
    else:
        F = _field(args)
        n = args.n
        spec = tri.make_triangular(n, F)
    return _report(_verify_checks(spec, n, F, selected, bound, args.jobs))


def cmd_orbits(args) -> int:
    bound = _bound(args)
    if args.spec:
        spec = load_algebra_file(args.spec)
    else:
        spec = tri.make_triangular(args.n, _field(args))
    spaces = ["J", "J*"] if args.space == "both" else \
        (["J*"] if args.space == "dual" else ["J"])
    lines = []
    for sp in spaces:
        census = orbit_census(spec, sp)
        lines.append(f"space {sp}: n={census.n} n_E={census.n_e} residual={census.residual}")
        for T in sorted(census.n_sub, key=lambda t: (len(t), sorted(t))):
            lines.append(f"  n(J_{{{','.join(str(i + 1) for i in sorted(T))}}}) = {census.n_sub[T]}")
        for T, cnt in sorted(regular_orbit_counts(census).items(),
                             key=lambda kv: (len(kv[0]), sorted(kv[0]))):
            lines.append(f"  regular orbits with support {{{','.join(str(i + 1) for i in sorted(T))}}}: {cnt}")
        for orb in census.orbits:
            tag = "singular" if is_singular(spec, orb.representative, sp == "J*") else "regular"
            lines.append(f"  orbit rep {list(orb.representative)} size {len(orb.members)} {tag}")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_algebra(args) -> int:
    bound = _bound(args)
    spec = load_algebra_file(args.spec)
    partition = superclass_partition(spec, bound)
    census_d = orbit_census(spec, "J*")
    labels = enumerate_labels(spec, census_d)
    table = build_table(spec, partition, labels, bound, jobs=args.jobs)
    _write(args.out, _render_table(table, args.format))
    return _report(axioms_report(spec, table, partition))


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="supchar",
        description="Supercharacter tables for groups of invertible elements "
                    "of reduced algebras over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, triangular=True, spec_file=False):
        if triangular:
            p.add_argument("--n", type=int, default=None, help="matrix size")
            p.add_argument("--p", type=int, default=None, help="field characteristic")
            p.add_argument("--k", type=int, default=1, help="field degree, q = p^k")
        if spec_file:
            p.add_argument("--spec", default=None, help="algebra spec JSON file")
        p.add_argument("--bound", type=int, default=None,
                       help="enumeration bound override (default SUPCHAR_BOUND or 2^17)")
        p.add_argument("--jobs", type=int, default=1, help="parallel induction workers")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    pt = sub.add_parser("table", help="build a triangular supercharacter table")
    common(pt)
    pt.add_argument("--mode", choices=["closed", "brute", "both"], default="closed")
    pt.add_argument("--format", choices=["csv", "json"], default="csv")
    pt.add_argument("--diff-out", default=None, help="mismatch report path for --mode both")
    pt.set_defaults(func=cmd_table)

    pv = sub.add_parser("verify", help="run verification suites")
    common(pv, spec_file=True)
    pv.add_argument("--checks", nargs="+", default=["all"],
                    help="subset of: counts orbits axioms oracle restriction, or all")
    pv.set_defaults(func=cmd_verify)

    po = sub.add_parser("orbits", help="orbit census for J and J*")
    common(po, spec_file=True)
    po.add_argument("--space", choices=["primal", "dual", "both"], default="both")
    po.set_defaults(func=cmd_orbits)

    pa = sub.add_parser("algebra", help="full pipeline on a custom algebra spec file")
    common(pa, triangular=False, spec_file=True)
    pa.add_argument("--format", choices=["csv", "json"], default="csv")
    pa.set_defaults(func=cmd_algebra)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    uses_field = args.command == "table" or (
        args.command in ("verify", "orbits") and not args.spec)
    if args.command == "algebra" and not args.spec:
        print("algebra command requires --spec", file=sys.stderr)
        return EXIT_BAD_CONFIG
    if uses_field:
        if args.n is None or args.p is None:
            print("missing --n/--p for a triangular run", file=sys.stderr)
            return EXIT_BAD_CONFIG
        if args.n < 2:
            print(f"--n must be at least 2, got {args.n}", file=sys.stderr)
            return EXIT_BAD_CONFIG
    try:
        return args.func(args)
    except (GroupTooLarge, SpaceTooLarge) as exc:
        print(f"enumeration bound exceeded: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (AlgebraValidationError, NotPrime, BadSize, FileNotFoundError,
            json.JSONDecodeError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except SupcharError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
