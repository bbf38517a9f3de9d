"""Command-line interface.

Exit codes: 0 all checks pass, 1 a computation or verification failed,
2 usage error.  FLAGGED verification lines never affect the exit code.
"""
from __future__ import annotations

import argparse
import sys
import time

from . import (chartab, counting, fileio, formulas, groups, isoclinism,
               verification, words)
from .errors import (ParseError, PredicateFailed, UnknownFamily,
                     UnsupportedParameter, WordcountError, WordSyntaxError)

USAGE_ERRORS = (ParseError, WordSyntaxError, UnknownFamily,
                UnsupportedParameter)
MAX_N = 8


def load_group(spec):
    if spec.startswith("builtin:"):
        return groups.parse_builtin_spec(spec[len("builtin:"):])
    if spec.startswith("file:"):
        return fileio.import_group(spec[len("file:"):])
    raise UnsupportedParameter(
        f"group spec must be builtin:NAME(args) or file:PATH, got {spec!r}")


def _parse_domains(entries, G, arity):
    named = {"derived": groups.commutator_subgroup(G),
             "center": groups.center(G)}
    domains = [None] * arity
    for entry in entries or ():
        var, _, name = entry.partition("=")
        if not var.startswith("x") or not var[1:].isdigit() or \
                name not in named:
            raise UnsupportedParameter(
                f"domain must look like x1=derived or x1=center, got {entry!r}")
        i = int(var[1:])
        if not 1 <= i <= arity:
            raise UnsupportedParameter(f"variable {var} out of range")
        domains[i - 1] = named[name]
    return counting.DomainSpec(tuple(domains))


def _print_class_table(G, classes, columns, out):
    headers = ["class_rep", "size"] + [name for name, _ in columns]
    out.write("\t".join(headers) + "\n")
    for m in range(classes.num_classes):
        row = [str(G.label(classes.reps[m])), str(classes.sizes[m])]
        row += [str(values[m]) for _, values in columns]
        out.write("\t".join(row) + "\n")


def cmd_info(args, out):
    G = load_group(args.group)
    classes = groups.conjugacy_classes(G)
    report = formulas.classify(G) if G.order > 1 else None
    nclass = groups.nilpotency_class(G)
    out.write(f"order {G.order}\n")
    out.write(f"classes {classes.num_classes}\n")
    out.write(f"exponent {G.exponent()}\n")
    out.write(f"center {groups.center(G).order}\n")
    out.write(f"derived {groups.commutator_subgroup(G).order}\n")
    out.write(f"class {nclass if nclass is not None else 'not-nilpotent'}\n")
    upper = [s.order for s in groups.upper_central_series(G)]
    lower = [s.order for s in groups.lower_central_series(G)]
    out.write(f"upper_central_series {upper}\n")
    out.write(f"lower_central_series {lower}\n")
    if report is not None:
        out.write(f"abelian {report.is_abelian}\n")
        out.write(f"camina_group {report.is_camina_group}\n")
        out.write(f"vz_group {report.is_vz}\n")
        out.write(f"character_degrees {sorted(report.cd)}\n")
        out.write(f"unique_nonlinear {report.unique_nonlinear}\n")
    else:
        out.write("abelian True\n")
    return 0


def cmd_chartab(args, out):
    G = load_group(args.group)
    table = fileio.cached_character_table(G)
    out.write(chartab.dump_table(table))
    return 0


def cmd_count(args, out):
    G = load_group(args.group)
    word = words.parse(args.word)
    domains = _parse_domains(args.domain, G, word.arity)
    result = counting.zeta_brute(G, word, domains, workers=args.workers,
                                 budget=args.budget)
    if domains.all_whole():
        if args.format == "csv":
            counting.export_csv(G, result.classes, result, word.arity, out)
        else:
            _print_class_table(G, result.classes,
                               [("count", result.values)], out)
    else:
        out.write("element\tcount\n")
        for g in range(G.order):
            out.write(f"{G.label(g)}\t{result[g]}\n")
    return 0


def cmd_zeta(args, out):
    if not 2 <= args.n <= MAX_N:
        raise UnsupportedParameter(f"--n must be in 2..{MAX_N}")
    G = load_group(args.group)
    table = chartab.character_table(G)
    methods = ["brute", "char", "closed"] if args.method == "all" \
        else [args.method]
    columns = []
    for method in methods:
        if method == "brute":
            zeta = counting.zeta_brute(G, words.wn(args.n),
                                       workers=args.workers,
                                       budget=args.budget,
                                       classes=table.classes)
        elif method == "char":
            zeta = formulas.zeta_wn_char(G, table, args.n)
        else:
            try:
                zeta = closed_form_zeta(G, table, args.n)
            except PredicateFailed:
                if args.method == "all":
                    continue
                raise
        columns.append((method, zeta))
    if len({zeta.values for _, zeta in columns}) != 1:
        sys.stderr.write("methods disagree\n")
        return 1
    if args.format == "csv":
        counting.export_csv(G, table.classes, columns[0][1], args.n, out)
    else:
        _print_class_table(
            G, table.classes,
            [(name, zeta.values) for name, zeta in columns], out)
    return 0


def closed_form_zeta(G, table, n):
    """Dispatch to the first closed form whose predicate the group passes."""
    attempts = (formulas.closed_zeta_gcp_center,
                lambda *a: formulas.unique_nonlinear_recursion(*a)[1],
                formulas.closed_zeta_camina3,
                formulas.closed_zeta_tower)
    reasons = []
    for attempt in attempts:
        try:
            return attempt(G, table, n)
        except PredicateFailed as exc:
            reasons.append(str(exc))
    raise PredicateFailed("no closed form applies: " + "; ".join(reasons))


def cmd_verify(args, out):
    results = verification.run_suite(args.suite)
    for line in verification.format_results(results):
        out.write(line + "\n")
    failed = sum(1 for r in results if r.status == "FAIL")
    passed = sum(1 for r in results if r.status == "PASS")
    flagged = sum(1 for r in results if r.status == "FLAGGED")
    out.write(f"# {passed} passed, {failed} failed, {flagged} flagged\n")
    return 1 if failed else 0


def cmd_isoclinic(args, out):
    G = load_group(args.group)
    H = load_group(args.other)
    witness = isoclinism.find_isoclinism(G, H, args.n)
    if witness is None:
        out.write("not isoclinic\n")
        return 1
    out.write(f"isoclinic at level {args.n}\n")
    out.write(f"phi {list(witness.phi)}\n")
    out.write(f"psi {dict(sorted(witness.psi.items()))}\n")
    report = isoclinism.verify_scaling(witness)
    out.write(f"scaling_factor {report['factor']}\n")
    for g, h, value in report["checked"]:
        out.write(f"scaling {G.label(g)} -> {H.label(h)}: {value}\n")
    return 0


def cmd_bench(args, out):
    G = load_group(args.group)
    table = chartab.character_table(G)
    t0 = time.perf_counter()
    zb = counting.zeta_brute(G, words.wn(args.n), workers=args.workers,
                             budget=args.budget, classes=table.classes)
    t1 = time.perf_counter()
    zc = formulas.zeta_wn_char(G, table, args.n)
    t2 = time.perf_counter()
    agree = zb == zc
    out.write(f"brute {t1 - t0:.6f}s\n")
    out.write(f"char {t2 - t1:.6f}s\n")
    out.write(f"agree {agree}\n")
    return 0 if agree else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wordcount",
        description="Exact solution counts of commutator word equations "
                    "in finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    def group_arg(p, name="--group"):
        p.add_argument(name, required=True,
                       help="builtin:NAME(args) or file:PATH")

    def engine_args(p):
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--budget", type=int, default=counting.DEFAULT_BUDGET)

    p = add("info", cmd_info, help="group structure summary")
    group_arg(p)
    p = add("chartab", cmd_chartab, help="print (and cache) the character table")
    group_arg(p)
    p = add("count", cmd_count, help="brute-force fiber counts for a word")
    group_arg(p)
    p.add_argument("--word", required=True)
    p.add_argument("--domain", action="append",
                   help="restrict a variable, e.g. x1=derived")
    p.add_argument("--format", choices=("table", "csv"), default="table")
    engine_args(p)
    p = add("zeta", cmd_zeta, help="iterated-commutator counts by any method")
    group_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("brute", "char", "closed", "all"),
                   default="all")
    p.add_argument("--format", choices=("table", "csv"), default="table")
    engine_args(p)
    p = add("verify", cmd_verify, help="run a verification suite")
    p.add_argument("--suite", choices=verification.SUITES, default="all")
    p = add("isoclinic", cmd_isoclinic, help="search for an n-isoclinism")
    group_arg(p)
    group_arg(p, "--other")
    p.add_argument("--n", type=int, default=1)
    p = add("bench", cmd_bench, help="time brute vs character paths")
    group_arg(p)
    p.add_argument("--n", type=int, default=3)
    engine_args(p)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, sys.stdout)
    except USAGE_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except WordcountError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
