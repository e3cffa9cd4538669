"""KKT residuals for a primal/dual pair, with box multipliers derived from the gradient."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ProblemInstance, _check_point, eval_constraints


@dataclass(frozen=True, eq=False)
class KKTCertificate:
    stationarity_residual: np.ndarray
    eta_lower: np.ndarray
    eta_upper: np.ndarray
    comp_slack: np.ndarray
    feasibility: np.ndarray
    box_violation: float
    dual_violation: float
    max_residual: float

    def summary(self) -> dict:
        def inf(a):
            return float(np.max(np.abs(a))) if a.size else 0.0

        return {
            "stationarity": inf(self.stationarity_residual),
            "feasibility": float(np.max(self.feasibility, initial=0.0)),
            "complementarity": inf(self.comp_slack),
            "box_violation": self.box_violation,
            "dual_violation": self.dual_violation,
            "max_residual": self.max_residual,
        }


def lagrangian_gradient(instance: ProblemInstance, lam, y) -> np.ndarray:
    """Gradient of ``f + sum_i lam_i g_i`` at ``y``."""
    lam = np.asarray(lam, dtype=float)
    d = instance.delta + lam @ instance.theta
    a = instance.alpha + lam @ instance.beta
    return 2.0 * d * y + a


def kkt_residuals(instance: ProblemInstance, lam, y, tol: float = 1e-6) -> KKTCertificate:
    """Residuals of the KKT system at ``(lam, y)``.

    A lower (upper) box multiplier absorbs a positive (negative) gradient
    component only when ``y_j`` is within ``tol`` of that bound.
    ``max_residual`` is the infinity norm over stationarity, positive part
    of ``g``, complementarity, box violation and negative part of ``lam``.
    """
    y = _check_point(instance, y)
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (instance.m,):
        raise ValueError(f"multiplier vector has shape {lam.shape}, expected ({instance.m},)")

    s = lagrangian_gradient(instance, lam, y)
    near_lo = y - instance.lower <= tol
    near_hi = instance.upper - y <= tol
    eta_lo = np.where(near_lo, np.maximum(s, 0.0), 0.0)
    eta_hi = np.where(near_hi, np.maximum(-s, 0.0), 0.0)
    stat = s - eta_lo + eta_hi

    g = eval_constraints(instance, y)
    comp = lam * g
    box = float(
        max(
            np.max(instance.lower - y, initial=0.0),
            np.max(y - instance.upper, initial=0.0),
        )
    )
    dual = float(np.max(-lam, initial=0.0))
    worst = max(
        float(np.max(np.abs(stat), initial=0.0)),
        float(np.max(g, initial=0.0)),
        float(np.max(np.abs(comp), initial=0.0)),
        box,
        dual,
    )
    return KKTCertificate(stat, eta_lo, eta_hi, comp, g, box, dual, worst)
