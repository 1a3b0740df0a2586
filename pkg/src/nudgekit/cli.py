"""Command-line front end.

Exit status: 0 on success (``analyze``: group is non-nudgable), 1 on any
error, 2 when ``analyze`` finds the group nudgable.
"""

from __future__ import annotations

import argparse
import json
import sys

from .experiments import SAMPLE_CLASSIFY_CAP, SWEEP_CSV_HEADER, sample_subgroups, sweep_subgroups
from .groups import DEFAULT_CAP, GroupSizeError, SpecError, parse_spec
from .nudge import CLASSIFY_CAP, EQ_CONDITION_CAP, classify, d_set, satisfies_eq_condition
from .perm import Permutation, PermutationParseError, format_cycles, format_one_line, inverse, parse_one_line
from .verify import verify_paper

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NUDGABLE = 2


def _perm_human(p: Permutation) -> str:
    return f"[{format_one_line(p)}]  {format_cycles(p)}"


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def cmd_analyze(args: argparse.Namespace) -> int:
    group = parse_spec(args.spec, cap=args.cap)
    report = classify(group, spec=args.spec, cap=args.classify_cap)
    eq = None
    if args.eq_condition:
        eq = satisfies_eq_condition(group, cap=args.eq_cap)
    if args.format == "structured":
        doc = report.to_dict(timing=not args.no_timing)
        if eq is not None:
            doc["eq_condition"] = eq.to_dict()
        _emit(doc)
    else:
        print(f"group    {args.spec}")
        print(f"order    {report.order}")
        print(f"verdict  {report.verdict}")
        if report.nudgable:
            assert report.witness is not None
            print(f"witness  {_perm_human(report.witness)}")
            print(f"|D(pi)| = {report.d_size}, |D(pi^-1)| = {report.d_inverse_size}")
            print("D(pi):")
            for p in report.d_witness:
                print(f"  {_perm_human(p)}")
            print("D(pi^-1):")
            for p in report.d_witness_inverse:
                print(f"  {_perm_human(p)}")
        else:
            profile = ", ".join(f"{size}x{mult}" for size, mult in report.profile)
            print(f"|D| profile (size x count)  {profile}")
        if eq is not None:
            print(f"weakened dominance condition  {eq.verdict}")
            if eq.failing is not None:
                print(f"  fails at {_perm_human(eq.failing)}")
        if not args.no_timing:
            print(f"elapsed  {report.elapsed:.3f}s")
    return EXIT_NUDGABLE if report.nudgable else EXIT_OK


def cmd_dset(args: argparse.Namespace) -> int:
    group = parse_spec(args.spec, cap=args.cap)
    p = parse_one_line(args.perm)
    d = d_set(group, p)
    d_inv = d_set(group, inverse(p))
    if args.format == "structured":
        _emit({
            "spec": args.spec,
            "perm": format_one_line(p),
            "perm_inverse": format_one_line(inverse(p)),
            "d_size": len(d),
            "d_inverse_size": len(d_inv),
            "d_set": [format_one_line(s) for s in d],
            "d_set_inverse": [format_one_line(s) for s in d_inv],
        })
    else:
        print(f"pi       {_perm_human(p)}")
        print(f"pi^-1    {_perm_human(inverse(p))}")
        print(f"D(pi): {len(d)}")
        for s in d:
            print(f"  {_perm_human(s)}")
        print(f"D(pi^-1): {len(d_inv)}")
        for s in d_inv:
            print(f"  {_perm_human(s)}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    results = verify_paper(sys.stdout, extended=args.extended, only=args.only)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_ERROR


def cmd_sample(args: argparse.Namespace) -> int:
    stats = sample_subgroups(args.n, args.count, args.seed, cap=args.cap, classify_cap=args.classify_cap)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(stats.to_csv())
    if args.format == "structured":
        _emit(stats.to_dict())
    else:
        print(f"n = {stats.n}, samples = {stats.count}, seed = {stats.seed}")
        print(f"generated S_n        {stats.symmetric}")
        print(f"generated A_n        {stats.alternating}")
        print(f"other                {stats.other}")
        if stats.over_cap:
            print(f"over closure cap     {stats.over_cap}")
        print(f"S_n or A_n fraction  {stats.full_or_alternating_fraction:.4f}")
        print(f"non-nudgable         {stats.non_nudgable}")
        print(f"nudgable             {stats.nudgable}")
        print(f"skipped (large)      {stats.skipped_large}")
        for a, b in stats.specimens:
            print(f"  nudgable specimen  <{format_cycles(a)}, {format_cycles(b)}>  [{format_one_line(a)}] [{format_one_line(b)}]")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    result = sweep_subgroups(args.n, bound=args.bound, fixpoint=args.fixpoint)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(result.to_csv())
    if args.format == "structured":
        _emit(result.to_dict())
    else:
        doc = result.to_dict()
        print(f"n = {result.n}, subgroups = {result.subgroup_count}, counts by generator bound {result.counts_by_bound}")
        print(f"non-nudgable {doc['non_nudgable']}, nudgable {doc['nudgable']}")
        print(f"minimal nudgable order  {result.minimal_nudgable_order}")
        for r in result.records:
            if r.verdict == "nudgable":
                gens = ", ".join(format_cycles(g) for g in r.generators)
                print(f"  order {r.order:>3}  <{gens}>")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nudgekit", description="Nudgability of permutation groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("human", "structured"), default="human",
                       help="structured prints a JSON document with fixed key order")

    p = sub.add_parser("analyze", help="classify a group as nudgable or non-nudgable")
    p.add_argument("spec", help="group spec, e.g. S:4, A:6, D:5, embed:S:3@4fix2")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="closure size cap")
    p.add_argument("--classify-cap", type=int, default=CLASSIFY_CAP, help="largest order to classify")
    p.add_argument("--eq-condition", action="store_true", help="also test the weakened dominance condition")
    p.add_argument("--eq-cap", type=int, default=EQ_CONDITION_CAP, help="largest order for --eq-condition")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed time (for byte-stable output)")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dset", help="list D(pi) and D(pi^-1)")
    p.add_argument("spec", help="group spec")
    p.add_argument("--perm", required=True, help='one-line permutation, e.g. "6 5 3 1 4 2"')
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="closure size cap")
    common(p)
    p.set_defaults(func=cmd_dset)

    p = sub.add_parser("verify", help="run the verification checklist")
    p.add_argument("--extended", action="store_true", help="add the S_7 item")
    p.add_argument("--only", nargs="+", metavar="ID", help="run only these item numbers")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="random two-generator subgroups")
    p.add_argument("--n", type=int, required=True, help="degree")
    p.add_argument("--count", type=int, default=500, help="number of generator pairs")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="closure size cap")
    p.add_argument("--classify-cap", type=int, default=SAMPLE_CLASSIFY_CAP,
                   help="larger groups are tallied as skipped-large")
    p.add_argument("--csv", metavar="PATH", help="also write per-sample rows as CSV")
    common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("sweep", help="classify every subgroup of S_n (n <= 5)")
    p.add_argument("--n", type=int, required=True, help="degree, at most 5")
    p.add_argument("--bound", type=int, default=3, help="max generators per subgroup")
    p.add_argument("--fixpoint", action="store_true", help="raise the bound until the count stops growing")
    p.add_argument("--csv", metavar="PATH", help="also write per-subgroup rows as CSV")
    common(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, PermutationParseError, GroupSizeError, ValueError, OSError) as exc:
        print(f"nudgekit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
