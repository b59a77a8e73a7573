"""Command-line interface.

Verbs:
  gen     write an instance file
  solve   run one problem on one instance file, print result and charges
  sweep   run a config-driven sweep; writes CSVs, a text report, and figures
  verify  run the invariant smoke suite

Exit codes: 0 success, 1 configuration or input error, 2 invariant failure.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import algos1d, algos2d, baseline, harness, maps

PROBLEM_KINDS = {
    "lseg": "map1d",
    "szbt": "trit1d",
    "lsqr": "map2d",
    "lrecw": "map2d",
    "lrec2": "map2d",
}


def _cmd_gen(args) -> int:
    try:
        if args.kind == "map1d":
            m = maps.gen_random_1d(args.n, args.p_one, args.seed)
        elif args.kind == "trit1d":
            if args.gap is not None:
                m = maps.gen_planted_gap_trit1d(args.n, args.gap, args.p_one, args.seed)
            else:
                m = maps.gen_random_trit1d(args.n, args.p_one, args.p_two, args.seed)
        elif args.kind == "map2d":
            if args.blocks is not None:
                m = maps.gen_random_promise_2d(args.n, args.blocks, args.seed)
            else:
                m = maps.gen_random_2d(args.n, args.p_one, args.seed)
        else:
            raise ValueError(f"unknown kind {args.kind!r}")
        maps.write_instance(args.out, m, d=args.d)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.kind} n={args.n} to {args.out}")
    return 0


def _cmd_solve(args) -> int:
    try:
        instance, file_d = maps.read_instance(args.instance)
        d = args.d if args.d is not None else (file_d or 1)
        kind_needed = PROBLEM_KINDS[args.problem]
        if instance.kind != kind_needed:
            raise ValueError(f"problem {args.problem} needs a {kind_needed} instance, "
                             f"got {instance.kind}")
        rng = random.Random(args.seed)
        q = maps.CountingOracle(instance)
        c = maps.CountingOracle(instance)
        if args.problem == "lseg":
            q_res, c_res = algos1d.lseg(q, rng), baseline.lseg_scan(c)
        elif args.problem == "szbt":
            q_res, c_res = algos1d.szbt(q, rng), baseline.szbt_scan(c)
        elif args.problem == "lsqr":
            q_res, c_res = algos2d.lsqr(q, rng), baseline.lsqr_dp(c)
        elif args.problem == "lrecw":
            q_res, c_res = algos2d.lrecw(q, d, rng), baseline.lrecw_scan(c, d)
        else:
            q_res = algos2d.lrec2(q, args.h, args.w, rng)
            c_res = baseline.lrec2_scan(c, args.h, args.w)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"problem:          {args.problem}")
    print(f"search result:    {q_res}")
    print(f"search charge:    {q.count}")
    print(f"baseline result:  {c_res}")
    print(f"baseline charge:  {c.count}")
    return 0


def _cmd_sweep(args) -> int:
    try:
        cfg = harness.read_config(args.config)
        report = harness.run_sweep(cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "trials.csv").write_bytes(harness.emit(report, "csv"))
    (out_dir / "aggregates.csv").write_bytes(harness.emit(report, "aggregate-csv"))
    text = harness.emit(report, "text")
    (out_dir / "report.txt").write_bytes(text)
    sys.stdout.write(text.decode())
    if not args.no_plot:
        from .plotting import render_sweep_figures

        for path in render_sweep_figures(report, out_dir):
            print(f"figure: {path}")
    return 0


def _cmd_verify(args) -> int:
    from .verify import run_all_checks

    failures = 0
    for name, ok, detail in run_all_checks():
        status = "ok" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        print(f"[{status:4}] {name}{suffix}")
        failures += 0 if ok else 1
    if failures:
        print(f"{failures} invariant check(s) failed")
        return 2
    print("all invariant checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emptyq",
        description="Query-model benchmarks for largest-empty-region search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="write an instance file")
    p_gen.add_argument("--kind", required=True, choices=("map1d", "trit1d", "map2d"))
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--p-one", dest="p_one", type=float, default=0.02)
    p_gen.add_argument("--p-two", dest="p_two", type=float, default=0.02)
    p_gen.add_argument("--gap", type=int, default=None,
                       help="plant a bounded zero-gap of this length (trit1d)")
    p_gen.add_argument("--blocks", type=int, default=None,
                       help="generate a promise map with this many zero blocks (map2d)")
    p_gen.add_argument("--seed", type=int, default=1)
    p_gen.add_argument("--d", type=int, default=None,
                       help="optional width hint stored in the header")
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=_cmd_gen)

    p_solve = sub.add_parser("solve", help="solve one instance file")
    p_solve.add_argument("--problem", required=True, choices=harness.PROBLEMS)
    p_solve.add_argument("--instance", required=True)
    p_solve.add_argument("--seed", type=int, default=1)
    p_solve.add_argument("--d", type=int, default=None)
    p_solve.add_argument("--h", type=int, default=1)
    p_solve.add_argument("--w", type=int, default=1)
    p_solve.set_defaults(func=_cmd_solve)

    p_sweep = sub.add_parser("sweep", help="run a config-driven sweep")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out-dir", default="sweep-out")
    p_sweep.add_argument("--no-plot", action="store_true")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the invariant smoke suite")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
