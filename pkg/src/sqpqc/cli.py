"""Command line: ``generate``, ``solve``, ``check`` and ``bench``.

Exit codes: 0 success, 1 check failed, 2 usage or input error,
3 iteration cap reached, 4 bracket failure.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .fileio import (
    InstanceFormatError,
    dumps,
    load_instance,
    read_json,
    save_instance,
    write_json,
)
from .generator import GeneratorSpec, generate, instance_seed
from .kkt import kkt_residuals
from .model import ProblemInstance, eval_objective, validate
from .multi import SolveReport, SolverConfig, Status, solve
from .oracle import OracleError, oracle_dual_grid, relative_gap

log = logging.getLogger("sqpqc")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_BRACKET = 4

STATUS_EXIT = {
    Status.CONVERGED: EXIT_OK,
    Status.ITERATION_CAP: EXIT_CAP,
    Status.BRACKET_FAILURE: EXIT_BRACKET,
    Status.INVALID_INSTANCE: EXIT_USAGE,
}

BENCH_HEADER = ["n", "m", "solved", "time_mean_s", "iter_mean", "gap_mean"]
DETAIL_HEADER = ["n", "m", "index", "seed", "status", "time_s", "iterations", "objective", "max_residual", "gap"]

# oracle gaps are computed only up to this size (the grid is 101^m points)
ORACLE_MAX_N = 1000
ORACLE_MAX_M = 2


def oracle_tractable(instance: ProblemInstance) -> bool:
    return 1 <= instance.m <= ORACLE_MAX_M and instance.n <= ORACLE_MAX_N


def positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return v


def seed_int(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def bench_case(text: str) -> Tuple[int, int, int]:
    try:
        n, m, count = (int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,M,COUNT, got {text!r}") from None
    if n < 1 or m < 1 or count < 1:
        raise argparse.ArgumentTypeError(f"N, M and COUNT must all be >= 1, got {text!r}")
    return n, m, count


def report_to_dict(report: SolveReport, eps: float, wall: float, with_trace: bool) -> dict:
    doc = {
        "status": report.status.value,
        "objective": report.objective,
        "lambda": report.lam.tolist(),
        "y": report.y.tolist(),
        "iterations": report.iterations,
        "max_residual": report.certificate.max_residual,
        "wall_time_s": wall,
        "eps": eps,
    }
    if report.failed_constraint is not None:
        doc["failed_constraint"] = report.failed_constraint + 1
    if with_trace:
        doc["trace"] = [
            {
                "iteration": t.iteration,
                "k_updated": t.k_updated,
                "lambda": t.lambda_after.tolist(),
                "index_count": t.index_count,
                "dual_value": t.dual_value,
            }
            for t in report.trace
        ]
    return doc


def timed_solve(instance: ProblemInstance, config: SolverConfig) -> Tuple[SolveReport, float]:
    t0 = time.perf_counter()
    report = solve(instance, config)
    return report, time.perf_counter() - t0


def _config(args, trace=False) -> SolverConfig:
    return SolverConfig(
        eps=args.eps,
        max_iters=args.max_iters,
        stop_rule=args.stop_rule,
        trace=trace,
        track_dual_values=trace,
    )


def _load_valid(path) -> ProblemInstance:
    instance = load_instance(path)
    violations = validate(instance)
    if violations:
        raise InstanceFormatError("instance", "invalid: " + "; ".join(violations))
    return instance


def cmd_generate(args) -> int:
    instance = generate(GeneratorSpec(args.n, args.m, args.seed))
    try:
        digest = save_instance(instance, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"{args.out} sha256:{digest}")
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = _load_valid(args.instance)
    config = _config(args, trace=args.trace)
    report, wall = timed_solve(instance, config)
    doc = report_to_dict(report, args.eps, wall, args.trace)
    if not args.out:
        print(dumps(doc))
        return STATUS_EXIT[report.status]
    write_json(args.out, doc)
    print(
        f"status={report.status.value} objective={report.objective:.10g} "
        f"iterations={report.iterations} max_residual={report.certificate.max_residual:.3g} "
        f"time={wall:.3f}s"
    )
    return STATUS_EXIT[report.status]


def cmd_check(args) -> int:
    instance = _load_valid(args.instance)
    doc = read_json(args.report)
    try:
        lam = np.array(doc["lambda"], dtype=float)
        y = np.array(doc["y"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError("report", f"missing or malformed lambda/y ({exc})") from None
    if lam.shape != (instance.m,) or y.shape != (instance.n,):
        raise InstanceFormatError(
            "report",
            f"dimension mismatch: lambda {lam.shape}, y {y.shape} vs n={instance.n}, m={instance.m}",
        )
    eps = args.eps if args.eps is not None else float(doc.get("eps", 1e-6))
    cert = kkt_residuals(instance, lam, y, tol=eps)
    for key, value in cert.summary().items():
        print(f"{key}: {value:.3e}")
    if oracle_tractable(instance) and not args.no_oracle:
        try:
            ref = oracle_dual_grid(instance)
            print(f"oracle_gap: {relative_gap(eval_objective(instance, y), ref.value):.3e}")
        except OracleError as exc:
            print(f"oracle_gap: unavailable ({exc})")
    ok = cert.max_residual <= eps
    print("PASS" if ok else "FAIL", f"(max_residual {'<=' if ok else '>'} eps={eps:g})")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


@dataclass
class BenchRow:
    n: int
    m: int
    solved: int
    time_mean_s: Optional[float]
    iter_mean: Optional[float]
    gap_mean: Optional[float]


def _bench_one(job):
    n, m, index, seed, config = job
    instance = generate(GeneratorSpec(n, m, seed))
    report, wall = timed_solve(instance, config)
    gap = None
    if report.status is Status.CONVERGED and oracle_tractable(instance):
        try:
            gap = relative_gap(report.objective, oracle_dual_grid(instance).value)
        except OracleError:
            gap = None
    return {
        "n": n,
        "m": m,
        "index": index,
        "seed": seed,
        "status": report.status.value,
        "time_s": wall,
        "iterations": report.iterations,
        "objective": report.objective,
        "max_residual": report.certificate.max_residual,
        "gap": gap,
    }


def run_bench(cases: Sequence[Tuple[int, int, int]], seed: int, config: SolverConfig, threads: int = 1):
    """Solve ``count`` generated instances per ``(n, m)``; return summary rows and details."""
    jobs = [
        (n, m, i, instance_seed(seed, n, m, i), config)
        for n, m, count in cases
        for i in range(count)
    ]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            details = list(pool.map(_bench_one, jobs))
    else:
        details = [_bench_one(j) for j in jobs]

    rows: List[BenchRow] = []
    for n, m, _ in cases:
        mine = [d for d in details if d["n"] == n and d["m"] == m]
        ok = [d for d in mine if d["status"] == Status.CONVERGED.value]
        gaps = [d["gap"] for d in ok if d["gap"] is not None]
        rows.append(
            BenchRow(
                n=n,
                m=m,
                solved=len(ok),
                time_mean_s=float(np.mean([d["time_s"] for d in ok])) if ok else None,
                iter_mean=float(np.mean([d["iterations"] for d in ok])) if ok else None,
                gap_mean=float(np.mean(gaps)) if gaps else None,
            )
        )
    return rows, details


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=header)
        w.writeheader()
        for r in rows:
            w.writerow({k: ("" if r[k] is None else r[k]) for k in header})


def cmd_bench(args) -> int:
    threads = int(os.environ.get("SQPQC_THREADS", "1") or 1)
    rows, details = run_bench(args.case or [], args.seed, _config(args), max(threads, 1))
    detail_path = args.detail or str(Path(args.out).with_suffix("")) + ".detail.csv"
    write_csv(args.out, BENCH_HEADER, [asdict(r) for r in rows])
    write_csv(detail_path, DETAIL_HEADER, details)
    for r in rows:
        print(
            f"n={r.n} m={r.m} solved={r.solved} time={r.time_mean_s} "
            f"iter={r.iter_mean} gap={r.gap_mean}"
        )
    print(f"wrote {args.out} and {detail_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sqpqc", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp):
        sp.add_argument("--eps", type=positive_float, default=1e-6)
        sp.add_argument("--max-iters", type=positive_int, default=1000)
        sp.add_argument("--stop-rule", choices=("and", "or"), default="and")

    g = sub.add_parser("generate", help="write a random instance")
    g.add_argument("--n", type=positive_int, required=True)
    g.add_argument("--m", type=positive_int, required=True)
    g.add_argument("--seed", type=seed_int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("instance")
    s.add_argument("--out", help="report path (JSON); printed to stdout when omitted")
    s.add_argument("--trace", action="store_true", help="record per-iteration multipliers and dual values")
    solver_flags(s)
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("check", help="recompute KKT residuals for a report")
    c.add_argument("instance")
    c.add_argument("report")
    c.add_argument("--eps", type=positive_float, default=None, help="defaults to the report's eps")
    c.add_argument("--no-oracle", action="store_true")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", help="benchmark sweep over generated instances")
    b.add_argument("--case", type=bench_case, action="append", metavar="N,M,COUNT")
    b.add_argument("--seed", type=seed_int, default=0)
    b.add_argument("--out", required=True, help="summary CSV")
    b.add_argument("--detail", help="per-instance CSV (default: <out>.detail.csv)")
    solver_flags(b)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InstanceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
