import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from sqpqc.model import ProblemInstance, SingleConstraintProblem

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def one_d(delta=1.0, alpha=-4.0, theta=1.0, beta=0.0, sigma=-0.25, lo=-1.0, hi=1.0):
    """Scalar instance; the default is the worked case with lambda* = 3, y* = 0.5."""
    return ProblemInstance(
        delta=[delta], alpha=[alpha], theta=[[theta]], beta=[[beta]], sigma=[sigma], lower=[lo], upper=[hi]
    )


def one_d_sub(delta=1.0, alpha=-4.0, theta=1.0, beta=0.0, sigma=-0.25, lo=-1.0, hi=1.0):
    return SingleConstraintProblem([delta], [alpha], [theta], [beta], sigma, [lo], [hi])


def random_instance(rng, n, m, feasible=True):
    """Small random instance; with ``feasible`` a strictly feasible interior point exists."""
    delta = rng.uniform(0.1, 2.0, n)
    alpha = rng.uniform(-5.0, 5.0, n)
    theta = rng.uniform(0.0, 2.0, (m, n))
    beta = rng.uniform(-3.0, 3.0, (m, n))
    lower = -rng.uniform(0.5, 2.0, n)
    upper = rng.uniform(0.5, 2.0, n)
    y0 = rng.uniform(lower / 2, upper / 2)
    v = theta @ (y0 * y0) + beta @ y0
    sigma = -v - rng.uniform(0.1, 1.0, m) if feasible else rng.uniform(-3, 3, m)
    return ProblemInstance(delta, alpha, theta, beta, sigma, lower, upper)


finite = dict(allow_nan=False, allow_infinity=False)


@st.composite
def subproblems(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    vec = lambda lo, hi: draw(hnp.arrays(float, n, elements=st.floats(lo, hi, **finite)))
    lower = vec(-3.0, 0.0)
    width = vec(0.0, 3.0)
    return SingleConstraintProblem(
        delta_eff=vec(0.01, 5.0),
        alpha_eff=vec(-10.0, 10.0),
        theta_k=vec(0.0, 5.0),
        beta_k=vec(-10.0, 10.0),
        sigma_k=draw(st.floats(-10.0, 10.0, **finite)),
        lower=lower,
        upper=lower + width,
    )


@st.composite
def instances(draw, max_n=5, max_m=3, min_m=0):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(min_m, max_m))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_instance(np.random.default_rng(seed), n, m)
