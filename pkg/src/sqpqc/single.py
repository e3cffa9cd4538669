"""Single-constraint solver: closed-form inner minimizer plus dual bisection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import SingleConstraintProblem

BRACKET_CAP = 1e12
MAX_BISECTION_ITERS = 200


class BracketFailure(RuntimeError):
    """No multiplier up to ``BRACKET_CAP`` makes the constraint strictly negative.

    Typically the subproblem is infeasible or violates Slater's condition.
    """

    def __init__(self, message: str, constraint: int | None = None):
        super().__init__(message)
        self.constraint = constraint


@dataclass(frozen=True)
class BisectionBracket:
    lo: float
    hi: float


@dataclass(frozen=True, eq=False)
class SingleSolveResult:
    lambda_star: float
    y_star: np.ndarray
    g_at_solution: float
    bisection_iters: int
    converged: bool = True
    # width of the bracket known to contain the root at exit; 0 when no bisection ran
    bracket_width: float = 0.0


def inner_minimizer(sub: SingleConstraintProblem, lam: float) -> np.ndarray:
    """Minimizer of ``f + lam * g`` over the box, coordinate by coordinate.

    Each coordinate is the unconstrained stationary point of its 1-D
    quadratic clipped to ``[lower_j, upper_j]``.
    """
    if lam < 0:
        raise ValueError(f"multiplier must be nonnegative, got {lam}")
    y = -(sub.alpha_eff + lam * sub.beta_k) / (2.0 * (sub.delta_eff + lam * sub.theta_k))
    return np.minimum(np.maximum(y, sub.lower), sub.upper)


def g_of_lambda(sub: SingleConstraintProblem, lam: float) -> float:
    return sub.constraint(inner_minimizer(sub, lam))


def dual_function(sub: SingleConstraintProblem, lam: float) -> float:
    """``D(lam) = min_box f + lam * g`` for the subproblem (offset excluded)."""
    y = inner_minimizer(sub, lam)
    return sub.objective(y) + lam * sub.constraint(y)


def bracket(sub: SingleConstraintProblem) -> BisectionBracket:
    """Double ``hi`` from 1 until ``g(y*(hi)) < 0``.

    Assumes ``g(y*(0)) >= 0``; raises :class:`BracketFailure` past ``BRACKET_CAP``.
    """
    hi = 1.0
    while g_of_lambda(sub, hi) >= 0:
        hi *= 2.0
        if hi > BRACKET_CAP:
            raise BracketFailure(
                f"g(y*(lambda)) stays >= 0 for lambda up to {BRACKET_CAP:g}; "
                "subproblem looks infeasible"
            )
    return BisectionBracket(0.0, hi)


def solve_single(
    sub: SingleConstraintProblem,
    eps: float,
    complementarity: bool = True,
    max_iters: int = MAX_BISECTION_ITERS,
) -> SingleSolveResult:
    """Find the optimal multiplier of one constraint by bisection on ``g(y*(lam))``.

    The loop stops once ``|g(y*(lam))| <= eps``.  With ``complementarity``
    set it also requires ``lam * |g| <= eps``, so the returned pair passes
    the outer complementary-slackness test even when ``lam > 1``.  With it
    off the loop guard is the plain ``|g| <= eps``.

    Returns a result with ``converged=False`` when ``max_iters`` halvings
    (or floating-point exhaustion of the bracket) pass without meeting the
    tolerance; the last midpoint is returned in that case.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")

    def done(lam: float, g: float) -> bool:
        return abs(g) <= eps and (not complementarity or lam * abs(g) <= eps)

    y0 = inner_minimizer(sub, 0.0)
    g0 = sub.constraint(y0)
    if g0 <= eps:
        # covers g0 < 0 (inactive) and the folded 0 <= g0 <= eps case
        return SingleSolveResult(0.0, y0, g0, 0)

    br = bracket(sub)
    lo, hi = br.lo, br.hi
    lam, y, g = lo, y0, g0
    for it in range(1, max_iters + 1):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            return SingleSolveResult(lam, y, g, it - 1, converged=False, bracket_width=hi - lo)
        lam = mid
        y = inner_minimizer(sub, lam)
        g = sub.constraint(y)
        if done(lam, g):
            return SingleSolveResult(lam, y, g, it, bracket_width=0.5 * (hi - lo))
        if g > 0:
            lo = lam
        else:
            hi = lam
    return SingleSolveResult(lam, y, g, max_iters, converged=False, bracket_width=hi - lo)
