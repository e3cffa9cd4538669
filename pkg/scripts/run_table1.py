"""Scaling sweep in n with m = 2, printed in the layout of a solver comparison table.

    python scripts/run_table1.py --sizes 1000 5000 10000 --count 10 --out table1.csv
"""

import argparse
import os

from sqpqc.cli import BENCH_HEADER, write_csv, run_bench
from sqpqc.multi import SolverConfig


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[1000, 5000, 10000, 50000, 100000])
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="table1.csv")
    args = p.parse_args()

    threads = int(os.environ.get("SQPQC_THREADS", "1"))
    rows, details = run_bench([(n, args.m, args.count) for n in args.sizes], args.seed, SolverConfig(), threads)
    write_csv(args.out, BENCH_HEADER, [r.__dict__ for r in rows])
    print(f"{'n':>9} {'solved':>6} {'time(s)':>9} {'iter':>7} {'gap(1e-6)':>10}")
    for r in rows:
        gap = "-" if r.gap_mean is None else f"{r.gap_mean * 1e6:.3f}"
        t = "-" if r.time_mean_s is None else f"{r.time_mean_s:.3f}"
        it = "-" if r.iter_mean is None else f"{r.iter_mean:.1f}"
        print(f"{r.n:>9} {r.solved:>6} {t:>9} {it:>7} {gap:>10}")


if __name__ == "__main__":
    main()
