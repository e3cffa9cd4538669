"""Seeded random instances with a known strictly feasible point."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ProblemInstance


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    m: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def generate(spec: GeneratorSpec) -> ProblemInstance:
    """Draw a random instance.

    delta ~ U[0,1] (exact zeros redrawn), alpha ~ U[-5,-2], theta ~ U[0,2],
    beta ~ U[0,5], box [-1, 1].  A point y0 ~ U[-1,1]^n is drawn and each
    sigma_i ~ U[-v_i - 1, -v_i] with v_i = y0' Theta_i y0 + beta_i' y0, so
    g_i(y0) lies in [-1, 0].  y0 is kept as the instance witness.
    """
    n, m = spec.n, spec.m
    rng = np.random.default_rng(spec.seed)
    delta = rng.uniform(0.0, 1.0, n)
    while True:
        zero = delta == 0.0
        if not zero.any():
            break
        delta[zero] = rng.uniform(0.0, 1.0, int(zero.sum()))
    alpha = rng.uniform(-5.0, -2.0, n)
    theta = rng.uniform(0.0, 2.0, (m, n))
    beta = rng.uniform(0.0, 5.0, (m, n))
    y0 = rng.uniform(-1.0, 1.0, n)
    v = theta @ (y0 * y0) + beta @ y0
    sigma = rng.uniform(-v - 1.0, -v)
    return ProblemInstance(
        delta=delta,
        alpha=alpha,
        theta=theta,
        beta=beta,
        sigma=sigma,
        lower=-np.ones(n),
        upper=np.ones(n),
        witness=y0,
    )


def instance_seed(seed: int, n: int, m: int, index: int) -> int:
    """Per-instance seed for sweeps, stable across runs and worker order."""
    ss = np.random.SeedSequence([seed, n, m, index])
    return int(ss.generate_state(1, dtype=np.uint64)[0])
