"""Sensitivity to the number of constraints at fixed n.

    python scripts/run_table2.py --n 2000 --ms 2 3 5 7 --count 10
"""

import argparse
import os

from sqpqc.cli import BENCH_HEADER, write_csv, run_bench
from sqpqc.multi import SolverConfig


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=50000)
    p.add_argument("--ms", type=int, nargs="+", default=[2, 3, 4, 5, 6, 7])
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="table2.csv")
    args = p.parse_args()

    threads = int(os.environ.get("SQPQC_THREADS", "1"))
    cfg = SolverConfig(max_iters=args.max_iters)
    rows, details = run_bench([(args.n, m, args.count) for m in args.ms], args.seed, cfg, threads)
    write_csv(args.out, BENCH_HEADER, [r.__dict__ for r in rows])
    print(f"{'m':>3} {'solved':>6} {'time(s)':>9} {'iter':>7}")
    for r in rows:
        t = "-" if r.time_mean_s is None else f"{r.time_mean_s:.3f}"
        it = "-" if r.iter_mean is None else f"{r.iter_mean:.1f}"
        print(f"{r.m:>3} {r.solved:>6} {t:>9} {it:>7}")
    # iteration counts of unsolved instances are the cap; show them too
    for m in args.ms:
        its = [d["iterations"] for d in details if d["m"] == m]
        print(f"m={m}: iterations per instance {its}")


if __name__ == "__main__":
    main()
