"""Cyclic dual coordinate ascent over the constraints."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .kkt import KKTCertificate, kkt_residuals
from .model import (
    ProblemInstance,
    aggregate,
    check_multipliers,
    eval_constraints,
    eval_objective,
    validate,
)
from .single import BracketFailure, solve_single

log = logging.getLogger(__name__)


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    ITERATION_CAP = "IterationCapReached"
    BRACKET_FAILURE = "BracketFailure"
    INVALID_INSTANCE = "InvalidInstance"


class InvalidInstance(ValueError):
    def __init__(self, violations: List[str]):
        super().__init__("invalid instance: " + "; ".join(violations))
        self.violations = violations


@dataclass
class SolverConfig:
    eps: float = 1e-6
    max_iters: int = 1000
    track_dual_values: bool = False
    # "and": g_i <= eps and |lam_i g_i| <= eps; "or": the looser either-or test
    stop_rule: str = "and"
    trace: bool = False

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.stop_rule not in ("and", "or"):
            raise ValueError(f"unknown stop rule {self.stop_rule!r}")


@dataclass(frozen=True, eq=False)
class IterationTrace:
    iteration: int
    k_updated: int  # 1-based, matching the constraint numbering in reports
    lambda_after: np.ndarray
    index_count: int
    dual_value: Optional[float] = None


@dataclass(eq=False)
class SolveReport:
    y: np.ndarray
    lam: np.ndarray
    iterations: int
    certificate: KKTCertificate
    objective: float
    status: Status
    failed_constraint: Optional[int] = None
    trace: List[IterationTrace] = field(default_factory=list)

    @property
    def dual_values(self) -> List[float]:
        return [t.dual_value for t in self.trace if t.dual_value is not None]


def fully_aggregated_minimizer(instance: ProblemInstance, lam: np.ndarray):
    """Box minimizer of the full Lagrangian, plus its effective coefficients."""
    d = instance.delta + lam @ instance.theta
    a = instance.alpha + lam @ instance.beta
    y = np.minimum(np.maximum(-a / (2.0 * d), instance.lower), instance.upper)
    return y, d, a


def dual_value(instance: ProblemInstance, lam) -> float:
    """``L(lam) = min_box f + sum_i lam_i g_i`` via the closed-form minimizer."""
    lam = check_multipliers(lam, instance.m)
    y, d, a = fully_aggregated_minimizer(instance, lam)
    return float(y @ (d * y + a) + lam @ instance.sigma)


def dual_gradient(instance: ProblemInstance, lam) -> np.ndarray:
    lam = check_multipliers(lam, instance.m)
    y, _, _ = fully_aggregated_minimizer(instance, lam)
    return eval_constraints(instance, y)


def _passes(g: np.ndarray, lam: np.ndarray, eps: float, rule: str) -> np.ndarray:
    feas = g <= eps
    comp = np.abs(lam * g) <= eps
    return feas & comp if rule == "and" else feas | comp


def solve(
    instance: ProblemInstance,
    config: Optional[SolverConfig] = None,
    lam0=None,
    start: int = 0,
) -> SolveReport:
    """Maximize the Lagrangian dual one multiplier at a time, cycling through constraints.

    Each iteration folds the other multipliers into the objective, solves
    the resulting single-constraint problem by bisection and takes its
    primal point as the current ``y``.  The run stops when every
    constraint passes the stop test at that ``y``.  From a cold start
    (``lam0`` omitted) every constraint must have been visited once before
    stopping; a warm start from ``lam0`` that already passes the test
    returns with zero iterations.  ``start`` is the 0-based constraint
    updated first.

    Raises :class:`InvalidInstance` when ``validate`` reports violations.
    """
    config = config or SolverConfig()
    violations = validate(instance)
    if violations:
        raise InvalidInstance(violations)
    eps = config.eps
    m = instance.m

    if m == 0:
        y = np.minimum(np.maximum(-instance.alpha / (2.0 * instance.delta), instance.lower), instance.upper)
        cert = kkt_residuals(instance, np.zeros(0), y, tol=eps)
        status = Status.CONVERGED if cert.max_residual <= eps else Status.ITERATION_CAP
        return SolveReport(y, np.zeros(0), 0, cert, eval_objective(instance, y), status)

    if not 0 <= start < m:
        raise IndexError(f"start index {start} out of range for m={m}")
    if lam0 is None:
        lam = np.zeros(m)
        unvisited = set(range(m))
    else:
        lam = check_multipliers(lam0, m).copy()
        unvisited = set()
        y0, _, _ = fully_aggregated_minimizer(instance, lam)
        if np.all(_passes(eval_constraints(instance, y0), lam, eps, config.stop_rule)):
            cert = kkt_residuals(instance, lam, y0, tol=eps)
            return SolveReport(y0, lam, 0, cert, eval_objective(instance, y0), Status.CONVERGED)

    record = config.trace or config.track_dual_values
    trace: List[IterationTrace] = []
    strict = config.stop_rule == "and"
    y = None
    k = start - 1
    status = Status.ITERATION_CAP
    failed = None
    it = 0
    for it in range(1, config.max_iters + 1):
        k = (k + 1) % m
        sub = aggregate(instance, lam, k)
        try:
            res = solve_single(sub, eps, complementarity=strict)
        except BracketFailure as exc:
            log.warning("constraint %d: %s", k + 1, exc)
            status, failed = Status.BRACKET_FAILURE, k
            it -= 1
            break
        lam[k] = res.lambda_star
        y = res.y_star
        unvisited.discard(k)

        g = eval_constraints(instance, y)
        index = int(np.count_nonzero(_passes(g, lam, eps, config.stop_rule)))
        if record:
            trace.append(
                IterationTrace(
                    iteration=it,
                    k_updated=k + 1,
                    lambda_after=lam.copy(),
                    index_count=index,
                    dual_value=dual_value(instance, lam) if config.track_dual_values else None,
                )
            )
        if index == m and not unvisited:
            status = Status.CONVERGED
            break

    if y is None:
        y, _, _ = fully_aggregated_minimizer(instance, lam)
    cert = kkt_residuals(instance, lam, y, tol=eps)
    if status is Status.CONVERGED and cert.max_residual > eps:
        log.warning("stop test passed but max KKT residual is %.3g", cert.max_residual)
    return SolveReport(
        y=y,
        lam=lam,
        iterations=it,
        certificate=cert,
        objective=eval_objective(instance, y),
        status=status,
        failed_constraint=failed,
        trace=trace,
    )
