"""Command-line interface.

Subcommands: check, region, decompose, verify, prob. Machine-readable
output (JSON/CSV) goes to stdout; diagnostics go to stderr. Exit codes:
0 success, 1 a requested property does not hold (infeasible under
--fail-on-infeasible, failed verification), 2 malformed input or an
enumeration guard.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import counting
from .diophantine import brute_force_solve, closed_form_solution
from .errors import SearchBudgetExceeded
from .feasibility import check_config, feasible_region
from .pattern import ChannelConfig
from .scheduler import (
    build_schedule,
    dof_of_schedule,
    schedule_from_dict,
    schedule_to_dict,
    validate_schedule,
)
from .signaling import verify_schedule_end_to_end


def _parse_offsets(text: str) -> tuple[int, ...]:
    try:
        offsets = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"offsets must be a comma-separated integer list: {text!r}") from exc
    if len(offsets) < 2:
        raise ValueError("need at least 2 offsets")
    return offsets


def _cmd_check(args) -> int:
    cfg = ChannelConfig(N=args.N, offsets=_parse_offsets(args.offsets))
    report = check_config(cfg)
    lam = list(closed_form_solution(report.s)) if report.feasible else None
    if args.json:
        print(json.dumps({
            "N": cfg.N,
            "K": cfg.K,
            "offsets": list(cfg.offsets),
            "s": list(report.s),
            "min_gap": report.min_gap,
            "threshold": float(report.threshold),
            "min_gap_required": report.min_gap_required,
            "feasible": report.feasible,
            "lambda": lam,
        }))
    else:
        print(f"N={cfg.N} K={cfg.K} offsets={list(cfg.offsets)}")
        print(f"group sizes s={list(report.s)}")
        print(f"min gap {report.min_gap}, required >= N/(K+1) = "
              f"{float(report.threshold):g} (integer {report.min_gap_required})")
        print(f"feasible: {str(report.feasible).lower()}")
        if lam is not None:
            print(f"lambda: {lam}")
    if args.fail_on_infeasible and not report.feasible:
        return 1
    return 0


def _cmd_region(args) -> int:
    region = feasible_region(args.N)
    feasible = set(region.points)
    if args.format == "json":
        print(json.dumps({
            "N": args.N,
            "count": region.count,
            "ratio": region.ratio,
            "points": [
                {"n2": n2, "n3": n3, "feasible": (n2, n3) in feasible}
                for n2 in range(args.N) for n3 in range(args.N)
            ],
        }))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["n2", "n3", "feasible"])
        for n2 in range(args.N):
            for n3 in range(args.N):
                writer.writerow([n2, n3, str((n2, n3) in feasible).lower()])
    print(f"count={region.count} total={args.N**2} ratio={region.ratio:.6g}",
          file=sys.stderr)
    return 0


def _cmd_decompose(args) -> int:
    cfg = ChannelConfig(N=args.N, offsets=_parse_offsets(args.offsets))
    report = check_config(cfg)
    if not report.feasible:
        K = cfg.K
        print(
            f"infeasible: sum(s) = {cfg.N} > (K+1)*min(s) = {(K + 1) * report.min_gap} "
            f"(min gap {report.min_gap} < N/(K+1) = {float(report.threshold):g})",
            file=sys.stderr,
        )
        return 1
    if args.all_solutions:
        solutions = brute_force_solve(report.s, enumerate_all=True,
                                      max_nodes=args.max_nodes)
        doc = [schedule_to_dict(build_schedule(cfg, lam)) for lam in solutions]
    else:
        doc = schedule_to_dict(build_schedule(cfg, closed_form_solution(report.s)))
    text = json.dumps(doc, sort_keys=True)
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        n = len(doc) if args.all_solutions else 1
        print(f"wrote {n} schedule(s) to {args.out}", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    try:
        with open(args.schedule, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read schedule: {exc}", file=sys.stderr)
        return 2
    sched = schedule_from_dict(data)  # ValueError -> exit 2 via main()
    report = validate_schedule(sched)
    if not report.passed:
        for line in report.failures:
            print(f"invalid schedule: {line}", file=sys.stderr)
        print("verification: FAIL (structure)")
        return 1
    summary = verify_schedule_end_to_end(sched.cfg, sched, seed=args.seed,
                                         trials=args.trials)
    print(f"verification: {'PASS' if summary.passed else 'FAIL'}")
    print(f"tuples={summary.n_tuples} trials={summary.trials}")
    print(f"max alignment residual: {summary.max_residual:.3e}")
    print(f"min normalized singular value: {summary.min_singular:.3e}")
    dof = dof_of_schedule(sched)
    print(f"symbols per slot: {dof} ({float(dof):g})")
    return 0 if summary.passed else 1


def _parse_k_values(args) -> list[int]:
    if args.K is not None and args.K_range is not None:
        raise ValueError("give either --K or --K-range, not both")
    if args.K is not None:
        return [args.K]
    if args.K_range is not None:
        try:
            lo, hi = (int(p) for p in args.K_range.split(":"))
        except ValueError as exc:
            raise ValueError(f"--K-range must be a:b, got {args.K_range!r}") from exc
        if lo > hi:
            raise ValueError("--K-range must be increasing")
        return list(range(lo, hi + 1))
    raise ValueError("one of --K or --K-range is required")


def _cmd_prob(args) -> int:
    rows = []
    for K in _parse_k_values(args):
        if args.method == "bound":
            if args.k_target == 3:
                if args.N % 4 != 0:
                    print(f"--method bound with --k-target 3 needs N divisible by 4 "
                          f"(got N={args.N}); use --method mc", file=sys.stderr)
                    return 2
                est = counting.p_upper_3(args.N, K)
            else:
                if args.N % 3 != 0:
                    print(f"--method bound with --k-target 2 needs N divisible by 3 "
                          f"(got N={args.N}); use --method mc", file=sys.stderr)
                    return 2
                f = counting.f_2user(args.N, K).value
                est = counting.ProbabilityEstimate(
                    p=float(1 - Fraction(f, args.N ** (K - 1))),
                    method="closed_form_bound",
                )
        elif args.method == "exact":
            try:
                est = counting.probability_exact(args.N, K, args.k_target,
                                                 threads=args.threads)
            except SearchBudgetExceeded as exc:
                print(str(exc), file=sys.stderr)
                return 2
        else:
            est = counting.monte_carlo_p(args.N, K, args.k_target,
                                         trials=args.trials, seed=args.seed,
                                         threads=args.threads)
        rows.append({
            "N": args.N, "K": K, "k_target": args.k_target,
            "method": args.method, "p": est.p,
            "half_width": est.half_width,
        })
    if args.format == "json":
        print(json.dumps(rows))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["N", "K", "k_target", "method", "p", "half_width"])
        for r in rows:
            hw = "" if r["half_width"] is None else repr(r["half_width"])
            writer.writerow([r["N"], r["K"], r["k_target"], r["method"],
                             repr(r["p"]), hw])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blindalign",
        description="Feasibility, scheduling and verification of blind "
                    "interference alignment on homogeneous block-fading "
                    "broadcast channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide feasibility of one config")
    p.add_argument("--N", type=int, required=True, help="coherence time in slots")
    p.add_argument("--offsets", required=True,
                   help="comma-separated block offsets, user 1 first")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--fail-on-infeasible", action="store_true",
                   help="exit 1 when the config is infeasible")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("region", help="enumerate the 3-user feasible offset grid")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_region)

    p = sub.add_parser("decompose", help="build a slot schedule for a feasible config")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--offsets", required=True)
    p.add_argument("--out", default="-", help="output path ('-' for stdout)")
    p.add_argument("--all-solutions", action="store_true",
                   help="emit one schedule per certificate found by exhaustive search")
    p.add_argument("--max-nodes", type=int, default=2_000_000,
                   help="search guard for --all-solutions")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="re-validate and numerically verify a schedule file")
    p.add_argument("--schedule", required=True, help="schedule JSON path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100,
                   help="independent channel realizations")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("prob", help="probability of finding a feasible user subset")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--K", type=int)
    p.add_argument("--K-range", dest="K_range", help="inclusive range a:b")
    p.add_argument("--k-target", type=int, choices=[2, 3], required=True)
    p.add_argument("--method", choices=["bound", "exact", "mc"], required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap for exact/mc (results do not depend on it)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_prob)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
