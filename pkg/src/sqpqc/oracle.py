"""Reference checks that do not go through the coordinate-ascent path.

``oracle_dual_grid`` maximizes the Lagrangian dual by exhaustive search on
a refined grid, so it is exponential in ``m`` and only meant for small
instances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ProblemInstance, check_multipliers
from .multi import dual_gradient, dual_value

GRID_POINTS = 101
SHRINK = 10.0
LAMBDA_MAX_CAP = 1e6
# rows of lambda evaluated per chunk are capped so chunk * n stays near this
_CHUNK_ELEMS = 2_000_000


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class OracleResult:
    lambda_hat: np.ndarray
    y_hat: np.ndarray
    value: float
    grid_resolution: float
    lambda_max: float


def _grid_values(instance: ProblemInstance, lams: np.ndarray) -> np.ndarray:
    """Dual values at each row of ``lams``, written out independently of ``multi``."""
    n = instance.n
    out = np.empty(lams.shape[0])
    step = max(1, _CHUNK_ELEMS // max(n, 1))
    for s in range(0, lams.shape[0], step):
        L = lams[s : s + step]
        d = instance.delta[None, :] + L @ instance.theta
        a = instance.alpha[None, :] + L @ instance.beta
        y = np.clip(-a / (2.0 * d), instance.lower, instance.upper)
        out[s : s + step] = np.einsum("pj,pj->p", y, d * y + a) + L @ instance.sigma
    return out


def _axis_grid(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    axes = [np.linspace(a, b, GRID_POINTS) for a, b in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=1)


def _search(instance, lambda_max, levels):
    m = instance.m
    lo = np.zeros(m)
    hi = np.full(m, float(lambda_max))
    pts = _axis_grid(lo, hi)
    vals = _grid_values(instance, pts)
    best = int(np.argmax(vals))
    lam, val = pts[best], vals[best]
    on_edge = bool(np.any(lam >= hi * (1 - 1e-12)))
    width = hi - lo
    for _ in range(levels):
        width = width / SHRINK
        lo = np.maximum(lam - width / 2, 0.0)
        hi = lo + width
        pts = _axis_grid(lo, hi)
        vals = _grid_values(instance, pts)
        best = int(np.argmax(vals))
        if vals[best] >= val:
            lam, val = pts[best], vals[best]
    resolution = float(np.max(width)) / (GRID_POINTS - 1)
    return lam, val, resolution, on_edge


def oracle_dual_grid(
    instance: ProblemInstance, lambda_max: float = 10.0, levels: int = 4
) -> OracleResult:
    """Grid-maximize ``L(lam)`` over ``[0, lambda_max]^m`` and refine ``levels`` times.

    If the coarse maximizer sits on the upper face of the grid, ``lambda_max``
    is multiplied by 10 and the search restarts, up to ``LAMBDA_MAX_CAP``.
    """
    m = instance.m
    if m > 3:
        raise OracleError(f"dual grid oracle supports m <= 3, got m={m}")
    if not lambda_max > 0:
        raise ValueError("lambda_max must be positive")
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if m == 0:
        y = np.clip(-instance.alpha / (2 * instance.delta), instance.lower, instance.upper)
        return OracleResult(np.zeros(0), y, float(y @ (instance.delta * y + instance.alpha)), 0.0, 0.0)

    while True:
        lam, val, res, on_edge = _search(instance, lambda_max, levels)
        if not on_edge:
            break
        if lambda_max * SHRINK > LAMBDA_MAX_CAP:
            raise OracleError(f"dual maximizer not bracketed by lambda_max={LAMBDA_MAX_CAP:g}")
        lambda_max *= SHRINK

    d = instance.delta + lam @ instance.theta
    a = instance.alpha + lam @ instance.beta
    y = np.clip(-a / (2.0 * d), instance.lower, instance.upper)
    return OracleResult(lam.copy(), y, float(val), res, float(lambda_max))


def relative_gap(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


def finite_difference_check(instance: ProblemInstance, lam, h: float = 1e-5) -> float:
    """Largest gap between central differences of ``L`` and its closed-form gradient."""
    lam = check_multipliers(lam, instance.m)
    if not h > 0:
        raise ValueError("step must be positive")
    if np.any(lam < h):
        raise ValueError("every multiplier must be >= h so central differences stay feasible")
    grad = dual_gradient(instance, lam)
    err = 0.0
    for i in range(instance.m):
        e = np.zeros(instance.m)
        e[i] = h
        fd = (dual_value(instance, lam + e) - dual_value(instance, lam - e)) / (2 * h)
        err = max(err, abs(fd - grad[i]))
    return err
