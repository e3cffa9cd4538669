"""Problem data for separable convex QPs with separable quadratic constraints.

The problem is

    min   sum_j delta_j y_j^2 + alpha_j y_j
    s.t.  g_i(y) = sum_j theta_ij y_j^2 + beta_ij y_j + sigma_i <= 0,  i < m
          lower <= y <= upper

with every quadratic form diagonal, so all evaluation below is O(m n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np


def _vec(x) -> np.ndarray:
    a = np.array(x, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """Diagonal objective, ``m`` diagonal constraints and a box.

    ``theta`` and ``beta`` are stored densely with shape ``(m, n)``.
    ``witness`` is an optional strictly feasible point kept by the
    generator; solvers never read it.
    """

    delta: np.ndarray
    alpha: np.ndarray
    theta: np.ndarray
    beta: np.ndarray
    sigma: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    witness: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        for name in ("delta", "alpha", "sigma", "lower", "upper"):
            object.__setattr__(self, name, _vec(getattr(self, name)))
        n = self.delta.shape[0] if self.delta.ndim == 1 else 0
        for name in ("theta", "beta"):
            a = np.array(getattr(self, name), dtype=float)
            if a.size == 0:
                a = a.reshape(0, n)
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        if self.witness is not None:
            object.__setattr__(self, "witness", _vec(self.witness))

    @property
    def n(self) -> int:
        return int(self.delta.shape[0])

    @property
    def m(self) -> int:
        return int(self.theta.shape[0])

    @classmethod
    def unconstrained(cls, delta, alpha, lower, upper) -> "ProblemInstance":
        n = len(delta)
        return cls(delta, alpha, np.zeros((0, n)), np.zeros((0, n)), np.zeros(0), lower, upper)


@dataclass(frozen=True, eq=False)
class SingleConstraintProblem:
    """One constraint kept explicit, the remaining multipliers folded in.

    ``const_offset`` is ``sum_{i != k} lambda_i sigma_i``; the subproblem
    solver ignores it but it lets callers report parent dual values.
    """

    delta_eff: np.ndarray
    alpha_eff: np.ndarray
    theta_k: np.ndarray
    beta_k: np.ndarray
    sigma_k: float
    lower: np.ndarray
    upper: np.ndarray
    const_offset: float = 0.0

    def __post_init__(self):
        for name in ("delta_eff", "alpha_eff", "theta_k", "beta_k", "lower", "upper"):
            object.__setattr__(self, name, _vec(getattr(self, name)))
        object.__setattr__(self, "sigma_k", float(self.sigma_k))
        object.__setattr__(self, "const_offset", float(self.const_offset))

    @property
    def n(self) -> int:
        return int(self.delta_eff.shape[0])

    def constraint(self, y: np.ndarray) -> float:
        return float(y @ (self.theta_k * y + self.beta_k) + self.sigma_k)

    def objective(self, y: np.ndarray) -> float:
        return float(y @ (self.delta_eff * y + self.alpha_eff))


def check_multipliers(lam, m: int) -> np.ndarray:
    """Return ``lam`` as a float vector of length ``m``, rejecting negatives."""
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (m,):
        raise ValueError(f"multiplier vector has shape {lam.shape}, expected ({m},)")
    if np.any(lam < 0) or not np.all(np.isfinite(lam)):
        raise ValueError("multipliers must be finite and nonnegative")
    return lam


def validate(instance: ProblemInstance) -> List[str]:
    """List every violated instance invariant. Empty means valid."""
    out: List[str] = []
    n = instance.n
    if instance.delta.ndim != 1 or n < 1:
        return ["delta must be a nonempty vector"]
    for name in ("alpha", "lower", "upper"):
        if getattr(instance, name).shape != (n,):
            out.append(f"{name} has shape {getattr(instance, name).shape}, expected ({n},)")
    m = instance.theta.shape[0] if instance.theta.ndim == 2 else -1
    if instance.theta.ndim != 2 or instance.theta.shape[1] != n:
        out.append(f"theta has shape {instance.theta.shape}, expected (m, {n})")
    if instance.beta.shape != instance.theta.shape:
        out.append(f"beta has shape {instance.beta.shape}, expected {instance.theta.shape}")
    if instance.sigma.shape != (max(m, 0),):
        out.append(f"sigma has shape {instance.sigma.shape}, expected ({max(m, 0)},)")
    if instance.witness is not None and instance.witness.shape != (n,):
        out.append(f"witness has shape {instance.witness.shape}, expected ({n},)")
    if out:
        return out

    for name in ("delta", "alpha", "sigma", "lower", "upper"):
        for j in np.flatnonzero(~np.isfinite(getattr(instance, name))):
            out.append(f"{name}[{j}] not finite")
    for name in ("theta", "beta"):
        for i, j in np.argwhere(~np.isfinite(getattr(instance, name))):
            out.append(f"{name}[{i}][{j}] not finite")
    for j in np.flatnonzero(~(instance.delta > 0)):
        if np.isfinite(instance.delta[j]):
            out.append(f"delta[{j}] not > 0")
    for i, j in np.argwhere(instance.theta < 0):
        out.append(f"theta[{i}][{j}] not >= 0")
    for j in np.flatnonzero(instance.lower > instance.upper):
        out.append(f"lower[{j}] > upper[{j}]")
    return out


def _check_point(instance: ProblemInstance, y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.shape != (instance.n,):
        raise ValueError(f"point has shape {y.shape}, expected ({instance.n},)")
    return y


def eval_objective(instance: ProblemInstance, y) -> float:
    y = _check_point(instance, y)
    return float(y @ (instance.delta * y + instance.alpha))


def eval_constraint(instance: ProblemInstance, i: int, y) -> float:
    if not 0 <= i < instance.m:
        raise IndexError(f"constraint index {i} out of range for m={instance.m}")
    y = _check_point(instance, y)
    return float(y @ (instance.theta[i] * y + instance.beta[i]) + instance.sigma[i])


def eval_constraints(instance: ProblemInstance, y) -> np.ndarray:
    """All ``g_i(y)`` at once."""
    y = _check_point(instance, y)
    return instance.theta @ (y * y) + instance.beta @ y + instance.sigma


def aggregate(instance: ProblemInstance, lam, k: int) -> SingleConstraintProblem:
    """Fold every multiplier except ``lam[k]`` into the objective."""
    m = instance.m
    if not 0 <= k < m:
        raise IndexError(f"constraint index {k} out of range for m={m}")
    lam = check_multipliers(lam, m)
    fixed = lam.copy()
    fixed[k] = 0.0
    if m == 1:
        delta_eff, alpha_eff, offset = instance.delta, instance.alpha, 0.0
    else:
        delta_eff = instance.delta + fixed @ instance.theta
        alpha_eff = instance.alpha + fixed @ instance.beta
        offset = float(fixed @ instance.sigma)
    return SingleConstraintProblem(
        delta_eff=delta_eff,
        alpha_eff=alpha_eff,
        theta_k=instance.theta[k],
        beta_k=instance.beta[k],
        sigma_k=instance.sigma[k],
        lower=instance.lower,
        upper=instance.upper,
        const_offset=offset,
    )
