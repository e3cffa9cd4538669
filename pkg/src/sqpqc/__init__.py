"""Dual coordinate ascent for separable convex QPs with separable quadratic constraints."""

from .generator import GeneratorSpec, generate
from .kkt import KKTCertificate, kkt_residuals
from .model import (
    ProblemInstance,
    SingleConstraintProblem,
    aggregate,
    eval_constraint,
    eval_constraints,
    eval_objective,
    validate,
)
from .multi import (
    InvalidInstance,
    SolveReport,
    SolverConfig,
    Status,
    dual_gradient,
    dual_value,
    solve,
)
from .oracle import OracleResult, finite_difference_check, oracle_dual_grid
from .single import BracketFailure, bracket, inner_minimizer, solve_single

__all__ = [
    "BracketFailure",
    "GeneratorSpec",
    "InvalidInstance",
    "KKTCertificate",
    "OracleResult",
    "ProblemInstance",
    "SingleConstraintProblem",
    "SolveReport",
    "SolverConfig",
    "Status",
    "aggregate",
    "bracket",
    "dual_gradient",
    "dual_value",
    "eval_constraint",
    "eval_constraints",
    "eval_objective",
    "finite_difference_check",
    "generate",
    "inner_minimizer",
    "kkt_residuals",
    "oracle_dual_grid",
    "solve",
    "solve_single",
    "validate",
]
