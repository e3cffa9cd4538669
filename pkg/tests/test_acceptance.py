"""Exit criteria, one test per criterion.

Each test appends a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import time
from functools import lru_cache

import numpy as np
import pytest

from sqpqc.generator import GeneratorSpec, generate, instance_seed
from sqpqc.kkt import kkt_residuals
from sqpqc.model import SingleConstraintProblem, aggregate, eval_constraints, validate
from sqpqc.multi import SolverConfig, Status, solve
from sqpqc.oracle import finite_difference_check, oracle_dual_grid, relative_gap
from sqpqc.single import g_of_lambda, solve_single

EPS = 1e-6
K = 1000
BASE_SEED = 2024


def instance(n, m, i):
    return generate(GeneratorSpec(n, m, instance_seed(BASE_SEED, n, m, i)))


@lru_cache(maxsize=None)
def timed(n, m, i):
    inst = instance(n, m, i)
    t0 = time.perf_counter()
    rep = solve(inst, SolverConfig(eps=EPS, max_iters=K))
    return inst, rep, time.perf_counter() - t0


def record(log, number, ok, detail):
    log.append(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {detail}")


ITER_BAND = (17, 68)


def test_c01_iteration_counts_m2(acceptance_log):
    parts, ok = [], True
    for n in (1000, 10000):
        runs = [timed(n, 2, i)[1] for i in range(10)]
        conv = all(r.status is Status.CONVERGED for r in runs)
        mean = float(np.mean([r.iterations for r in runs]))
        ok &= conv and ITER_BAND[0] <= mean <= ITER_BAND[1]
        parts.append(f"n={n} converged={sum(r.status is Status.CONVERGED for r in runs)}/10 iter_mean={mean:.1f}")
    record(acceptance_log, 1, ok, "; ".join(parts) + f" (band {ITER_BAND})")
    assert ok


def test_c02_constraint_count_scaling(acceptance_log):
    means, conv = [], True
    for m in (2, 3, 5, 7):
        runs = [timed(2000, m, i)[1] for i in range(10)]
        conv &= all(r.status is Status.CONVERGED for r in runs)
        means.append(float(np.mean([r.iterations for r in runs])))
    monotone = all(a <= b for a, b in zip(means, means[1:]))
    ok = monotone and conv
    record(
        acceptance_log,
        2,
        ok,
        f"n=2000 iter_mean by m=2,3,5,7: {[round(x, 1) for x in means]} nondecreasing={monotone} all_converged={conv}",
    )
    assert ok


def gap_cases():
    # 48 + 2 = 50 instances
    return [(n, m, i) for n in (2, 5, 10, 100) for m in (1, 2) for i in range(6)] + [(100, 2, 6), (10, 2, 6)]


def test_c03_optimality_gap(acceptance_log):
    cases = gap_cases()
    gaps = []
    for n, m, i in cases:
        inst, rep, _ = timed(n, m, i)
        assert rep.status is Status.CONVERGED
        gaps.append(relative_gap(rep.objective, oracle_dual_grid(inst).value))
    ok = len(cases) == 50 and max(gaps) <= 1e-5
    record(acceptance_log, 3, ok, f"{len(cases)} instances, max relative gap {max(gaps):.2e} (tol 1e-5)")
    assert ok


def test_c04_million_variables(acceptance_log):
    _, rep, wall = timed(10**6, 2, 0)
    ok = rep.status is Status.CONVERGED and wall <= 120.0
    record(acceptance_log, 4, ok, f"n=1e6 m=2 status={rep.status.value} iterations={rep.iterations} time={wall:.1f}s (limit 120s)")
    assert ok


def test_c05_eps_kkt_for_converged_reports(acceptance_log):
    keys = (
        [(n, 2, i) for n in (1000, 10000) for i in range(10)]
        + [(2000, m, i) for m in (2, 3, 5, 7) for i in range(10)]
        + gap_cases()
        + [(10**6, 2, 0)]
    )
    worst, count = 0.0, 0
    for key in keys:
        inst, rep, _ = timed(*key)
        if rep.status is Status.CONVERGED:
            cert = kkt_residuals(inst, rep.lam, rep.y, tol=EPS)
            worst = max(worst, cert.max_residual)
            count += 1
    ok = worst <= EPS
    record(acceptance_log, 5, ok, f"{count} converged reports, worst max_residual {worst:.2e} (tol 1e-6)")
    assert ok


def test_c06_monotone_dual_ascent(acceptance_log):
    worst = 0.0
    for i in range(100):
        rep = solve(instance(50, 3, i), SolverConfig(eps=EPS, max_iters=K, track_dual_values=True))
        worst = max(worst, float(np.max(-np.diff(rep.dual_values), initial=0.0)))
    ok = worst <= 1e-9
    record(acceptance_log, 6, ok, f"100 instances (n=50, m=3), largest dual decrease {worst:.2e} (slack 1e-9)")
    assert ok


def test_c07_dual_derivative(acceptance_log):
    h = 1e-5
    rng = np.random.default_rng(7)
    worst = 0.0
    for i in range(20):
        inst = instance(50, 3, i)
        for _ in range(20):
            lam = rng.uniform(h, 5.0, inst.m)
            worst = max(worst, finite_difference_check(inst, lam, h))
    ok = worst <= 1e-4
    record(acceptance_log, 7, ok, f"20 instances x 20 points, max finite-difference error {worst:.2e} (tol 1e-4)")
    assert ok


def test_c08_constraint_value_monotone_in_multiplier(acceptance_log):
    rng = np.random.default_rng(8)
    worst = -np.inf
    for _ in range(1000):
        n = int(rng.integers(1, 20))
        lower = -rng.uniform(0, 3, n)
        sub = SingleConstraintProblem(
            delta_eff=rng.uniform(0.01, 5, n),
            alpha_eff=rng.uniform(-10, 10, n),
            theta_k=rng.uniform(0, 5, n),
            beta_k=rng.uniform(-10, 10, n),
            sigma_k=rng.uniform(-10, 10),
            lower=lower,
            upper=lower + rng.uniform(0, 3, n),
        )
        a, b = np.sort(rng.exponential(5.0, 2))
        worst = max(worst, g_of_lambda(sub, b) - g_of_lambda(sub, a))
    ok = worst <= 1e-12
    record(acceptance_log, 8, ok, f"1000 pairs, max increase of g(y*(lambda)) {worst:.2e} (slack 1e-12)")
    assert ok


def test_c09_single_constraint_reduction(acceptance_log):
    dlam = dobj = 0.0
    for i in range(50):
        inst = instance(100, 1, i)
        rep = solve(inst, SolverConfig(eps=EPS, max_iters=K))
        ref = solve_single(aggregate(inst, [0.0], 0), EPS)
        y = ref.y_star
        obj = float(y @ (inst.delta * y + inst.alpha))
        dlam = max(dlam, abs(rep.lam[0] - ref.lambda_star))
        dobj = max(dobj, abs(rep.objective - obj))
    ok = dlam <= 1e-9 and dobj <= 1e-10
    record(acceptance_log, 9, ok, f"50 instances, max |dlambda| {dlam:.1e}, max |dobjective| {dobj:.1e}")
    assert ok


def test_c10_generator_feasibility(acceptance_log):
    bad = 0
    for i in range(1000):
        rng = np.random.default_rng(i)
        inst = instance(int(rng.integers(1, 200)), int(rng.integers(1, 6)), i)
        g = eval_constraints(inst, inst.witness)
        if validate(inst) or not np.all((g >= -1) & (g <= 0)):
            bad += 1
    ok = bad == 0
    record(acceptance_log, 10, ok, f"1000 instances, {bad} with witness outside [-1, 0] or validation errors")
    assert ok
