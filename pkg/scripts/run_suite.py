"""Run every property suite and print a one-line verdict per suite.

    python3 scripts/run_suite.py --seed 7 --fixtures 20 --out-dir runs/seed7
"""

import argparse
import time

from skewcat.suite import RunConfig, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int)
    ap.add_argument("--fixtures", type=int)
    ap.add_argument("--mutant", action="append", default=[])
    ap.add_argument("--out-dir")
    args = ap.parse_args()
    cfg = RunConfig(fixtures=args.fixtures, mutants=tuple(args.mutant), out_dir=args.out_dir)
    if args.seed is not None:
        cfg.seed = args.seed
    start = time.perf_counter()
    report = run_suite(cfg)
    for s in report["suites"]:
        flag = "ok  " if s["passed"] else "FAIL"
        print(f"{flag} {s['id']:34s} fixtures={s['fixtures']:4d} checks={s['checks']}")
    print(f"seed={report['seed']} all_passed={report['all_passed']} ({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    main()
