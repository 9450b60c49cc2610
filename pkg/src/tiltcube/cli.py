"""Command-line interface: ``tiltcube <subcommand> ...``.

Output is JSON on stdout (``table`` defaults to CSV).  Exit status is 0 on
success, 1 when a family fails a check, and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .bounds import (FULL, JK_ONLY, atmostk_weight_bound, build_lp, check_windows,
                     distance1_level_bound, dual_certificate_ok, lp_closed_form_jk,
                     solve_lp_exact, window_sets_12, window_sets_pq)
from .chains import (check_chain_identity_12, chain_family_12, expected_hits, lym_sum,
                     random_ordering)
from .constructions import b0_size, build, parse_construction
from .core import SizeGuardError, format_rational, middle_binomial, profile_of, to_elements
from .familyfile import FamilyFileError, read_family, write_family
from .predicates import (AT_MOST_DISTANCE, EXACT_DISTANCE, LEVEL_SHORTCUT,
                         PAIRWISE, RATIO, full_levels, parse_predicate, verify_family)
from .search import PROVED_OPTIMAL, SearchBudget, max_family
from .shadow import is_antichain, k_shadow

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2

TABLE_COLUMNS = ["n", "b0", "lp_full", "lp_jk", "exact_max", "middle_binomial",
                 "b0_over_middle", "lp_full_over_middle", "lp_full_vs_b0"]


class UsageError(Exception):
    pass


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _sets(words) -> list:
    return [to_elements(w) for w in words]


def _decimal(x: Fraction, digits: int = 6) -> str:
    """Fixed-point rendering of an exact rational without going through floats."""
    scaled = round(x * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def threads_setting() -> int:
    """TILTCUBE_THREADS override; accepted for compatibility, work runs on one thread."""
    raw = os.environ.get("TILTCUBE_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"TILTCUBE_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"TILTCUBE_THREADS must be a positive integer, got {raw!r}")
    return value


# -- subcommands -----------------------------------------------------------------

def cmd_construct(args) -> int:
    family, meta = build(parse_construction(args.family, args.n))
    payload = {"n": args.n, "family": args.family, "size": len(family),
               "profile": [int(c) for c in profile_of(family)], **meta}
    if args.output:
        write_family(family, args.output)
        payload["output"] = args.output
    else:
        payload["members"] = family.as_sets()
    _emit(payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    family = read_family(args.input)
    pred = parse_predicate(args.predicate)
    strategy = args.strategy
    if strategy == "auto":
        strategy = LEVEL_SHORTCUT if family.members and full_levels(family) else PAIRWISE
    report = verify_family(family, pred, strategy, max_violations=args.max_violations)
    _emit({"predicate": str(pred), "n": family.n, "size": len(family), "valid": report.valid,
           "strategy": report.strategy,
           "violations": [[to_elements(a), to_elements(b)] for a, b in report.violations]})
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_solve(args) -> int:
    pred = parse_predicate(args.predicate)
    budget = SearchBudget(max_universe=args.max_universe, time_limit=args.timeout,
                          deterministic=args.deterministic)
    result = max_family(args.n, pred, budget)
    payload = {"n": args.n, "predicate": str(pred), "size": result.size,
               "status": result.status, "nodes_expanded": result.nodes_expanded,
               "deterministic": args.deterministic}
    if args.witness:
        payload["witness"] = result.witness.as_sets()
    if args.output:
        write_family(result.witness, args.output)
        payload["output"] = args.output
    _emit(payload)
    return EXIT_OK


def cmd_lp_bound(args) -> int:
    if args.full and args.jk:
        raise UsageError("choose at most one of --full and --jk")
    if args.full:
        variant = FULL
    elif args.jk:
        variant = JK_ONLY
    else:
        variant = FULL if (args.p, args.q) == (1, 2) else JK_ONLY
    lp = build_lp(args.n, args.p, args.q, variant)
    sol = solve_lp_exact(lp)
    payload = {"n": args.n, "p": args.p, "q": args.q, "variant": variant,
               "optimum": format_rational(sol.optimum),
               "profile": [format_rational(x) for x in sol.profile],
               "unique": sol.unique, "uniqueness": sol.uniqueness,
               "dual_certificate": dual_certificate_ok(lp, sol)}
    if variant == JK_ONLY:
        payload["closed_form"] = format_rational(lp_closed_form_jk(args.n, args.p, args.q))
    _emit(payload)
    return EXIT_OK


def cmd_chains(args) -> int:
    n, l = args.n, args.l
    if args.input:
        family = read_family(args.input)
        if family.n != n:
            raise UsageError(f"family is on [{family.n}] but --n is {n}")
        label = args.input
    else:
        spec = args.family or ("b0" if n % 2 == 0 else "interval:1:2")
        family, _ = build(parse_construction(spec, n))
        label = spec
    est = expected_hits(family, l, args.trials, args.seed)
    checked = min(args.trials, args.check_orderings)
    identity = all(check_chain_identity_12(chain_family_12(random_ordering(n, args.seed + t), l))
                   for t in range(checked))
    _emit({"n": n, "l": l, "trials": args.trials, "seed": args.seed, "family": label,
           "mean": est.mean, "stderr": est.stderr,
           "lym_sum": format_rational(lym_sum(family, range(l, 2 * l + 1))),
           "orderings_checked": checked, "identity_check": "pass" if identity else "fail"})
    return EXIT_OK if identity else EXIT_INVALID


def cmd_shadow(args) -> int:
    family = read_family(args.input)
    res = k_shadow(family, args.k)
    antichain, witness = is_antichain(res.shadow)
    payload = {"k": args.k, "source_size": len(family), "shadow_size": len(res.shadow),
               "identity_sum": res.identity_sum, "identity_holds": res.identity_holds,
               "antichain": antichain, "middle_binomial": middle_binomial(family.n)}
    if witness:
        payload["antichain_witness"] = _sets(witness)
    _emit(payload)
    return EXIT_OK


def cmd_bounds(args) -> int:
    family = read_family(args.input)
    pred = parse_predicate(args.predicate)
    n = family.n
    if pred.kind == EXACT_DISTANCE:
        if pred.k != 1:
            raise UsageError("the double-count bound is only available for dist:1")
        rep = distance1_level_bound(family)
        payload = {"predicate": str(pred), "valid": rep.valid, "passed": rep.passed,
                   "levels": [{"level": s.level, "lhs": s.lhs, "rhs": s.rhs, "slack": s.slack}
                              for s in rep.levels]}
        if rep.violation:
            payload["violation"] = _sets(rep.violation)
        _emit(payload)
        return EXIT_OK if rep.passed else EXIT_INVALID
    if pred.kind == AT_MOST_DISTANCE:
        rep = atmostk_weight_bound(family, pred.k)
        payload = {"predicate": str(pred), "valid": rep.valid, "passed": rep.passed,
                   "weight": rep.weight, "bound": rep.bound}
        if rep.violation:
            payload["violation"] = _sets(rep.violation)
        _emit(payload)
        return EXIT_OK if rep.passed else EXIT_INVALID
    report = verify_family(family, pred, max_violations=1)
    if pred.kind == RATIO:
        windows = window_sets_pq(n, pred.p, pred.q)
        if (pred.p, pred.q) == (1, 2):
            windows = window_sets_12(n) + windows
    else:
        windows = [tuple(range(n + 1))]
    check = check_windows(profile_of(family), windows)
    passed = report.valid and check.passed
    _emit({"predicate": str(pred), "valid": report.valid, "passed": passed,
           "windows": [{"levels": list(w), "sum": format_rational(s)}
                       for w, s in zip(windows, check.sums)]})
    return EXIT_OK if passed else EXIT_INVALID


def table_rows(min_n: int, max_n: int, exact_max_n: int = 6, time_limit: float = 30.0) -> list[dict]:
    """One row per n comparing |B0|, both LP optima, the exact maximum and the middle layer."""
    rows = []
    for n in range(min_n, max_n + 1):
        middle = middle_binomial(n)
        row = {"n": n, "b0": "", "lp_full": "-", "lp_jk": "-", "exact_max": "",
               "middle_binomial": middle, "b0_over_middle": "",
               "lp_full_over_middle": "-", "lp_full_vs_b0": ""}
        b0 = b0_size(n) if n % 2 == 0 and 2 <= n <= 256 else None
        if b0 is not None:
            row["b0"] = b0
            row["b0_over_middle"] = _decimal(Fraction(b0, middle))
        if n <= 64:
            full = solve_lp_exact(build_lp(n, 1, 2, FULL)).optimum
            row["lp_full"] = format_rational(full) if full.denominator != 1 else int(full)
            row["lp_jk"] = int(lp_closed_form_jk(n, 1, 2))
            row["lp_full_over_middle"] = _decimal(full / middle)
            if b0 is not None:
                row["lp_full_vs_b0"] = "equal" if full == b0 else "lp_larger"
        if n <= exact_max_n:
            res = max_family(n, parse_predicate("ratio:1:2"),
                             SearchBudget(time_limit=time_limit, deterministic=False))
            if res.status == PROVED_OPTIMAL:
                row["exact_max"] = res.size
        rows.append(row)
    return rows


def cmd_table(args) -> int:
    if args.min_n < 1 or args.max_n < args.min_n:
        raise UsageError("need 1 <= --min-n <= --max-n")
    rows = table_rows(args.min_n, args.max_n, args.exact_max_n, args.timeout)
    if args.format == "json":
        _emit({"columns": TABLE_COLUMNS, "rows": rows})
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tiltcube",
                                     description="Families of subsets avoiding tilted Sperner configurations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a family and optionally write it to a file")
    p.add_argument("--family", required=True,
                   help="b0 | levels:L1,L2,... | interval:P:Q[:ANCHOR] | modular[:R] | powersum:K")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a family file against a predicate")
    p.add_argument("--predicate", required=True, help="ratio:P:Q | dist:K | distle:K | antichain")
    p.add_argument("--input", required=True)
    p.add_argument("--strategy", choices=["auto", PAIRWISE, LEVEL_SHORTCUT], default="auto")
    p.add_argument("--max-violations", type=int, default=10)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="exact maximum valid family by branch and bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--predicate", required=True)
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--max-universe", type=int, default=1 << 14)
    p.add_argument("--deterministic", action="store_true",
                   help="return the lexicographically smallest optimal witness")
    p.add_argument("--witness", action="store_true", help="include the witness family in the output")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("lp-bound", help="solve the level LP exactly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--full", action="store_true", help="all 1:2 windows")
    p.add_argument("--jk", action="store_true", help="only the residue-class windows J_k")
    p.set_defaults(func=cmd_lp_bound)

    p = sub.add_parser("chains", help="Monte-Carlo chain averaging for a 1:2 window")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check-orderings", type=int, default=1000)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input")
    src.add_argument("--family")
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("shadow", help="k-shadow of a family file")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_shadow)

    p = sub.add_parser("bounds", help="check the inequalities that apply to a predicate")
    p.add_argument("--input", required=True)
    p.add_argument("--predicate", required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="comparison table over a range of n")
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--max-n", type=int, default=24)
    p.add_argument("--exact-max-n", type=int, default=6)
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_table)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        threads_setting()
        return args.func(args)
    except (UsageError, FamilyFileError, SizeGuardError, ValueError, OSError) as exc:
        print(f"tiltcube {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
