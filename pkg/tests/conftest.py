"""Shared fixtures: the benchmark state pair, closed-form reference values and
randomized pair samplers."""

import math

import numpy as np
import pytest

from suliciu import Params, Region, State, classify
from suliciu.errors import EntropyViolation
from suliciu.exact import solve_classical, solve_delta

# closed-form reference values for the benchmark pair (9, 5, 14/5) / (1, 3, 2), s = 1
UD_EXACT = (21.0 * math.sqrt(5.0) - math.sqrt(37.0)) / (4.0 * math.sqrt(5.0))
W_RATE_EXACT = 2.0 * math.sqrt(37.0) / math.sqrt(5.0)
G_EXACT = (math.sqrt(5.0) + 29.0 * math.sqrt(37.0)) / (10.0 * math.sqrt(37.0))


@pytest.fixture
def p():
    return Params()


@pytest.fixture
def ref_pair():
    return State(9.0, 5.0, 14.0 / 5.0), State(1.0, 3.0, 2.0)


@pytest.fixture
def classical_pair():
    return State(1.0, 1.0, 0.0), State(1.0, 0.0, 0.0)


def random_state(rng, rho_range=(0.1, 10.0), uv_bound=5.0) -> State:
    return State(
        rng.uniform(*rho_range),
        rng.uniform(-uv_bound, uv_bound),
        rng.uniform(-uv_bound, uv_bound),
    )


def sample_delta_pairs(rng, n, p, *, require_solvable=True, collect_rejected=False):
    """Rejection-sample n state pairs classified DELTA_SHOCK; optionally only
    pairs the solver accepts (the region test alone admits pairs with no
    entropy-admissible solution). Optionally also return rejected pairs."""
    pairs = []
    rejected = []
    while len(pairs) < n:
        Ul = random_state(rng)
        Ur = random_state(rng)
        if classify(Ul, Ur, p) is not Region.DELTA_SHOCK:
            continue
        if require_solvable or collect_rejected:
            try:
                solve_delta(Ul, Ur, p)
            except EntropyViolation:
                if collect_rejected:
                    rejected.append((Ul, Ur))
                if require_solvable:
                    continue
        pairs.append((Ul, Ur))
    if collect_rejected:
        return pairs, rejected
    return pairs


def sample_classical_pairs(rng, n, p):
    """Rejection-sample n CLASSICAL pairs for which the three-contact
    construction yields positive intermediate densities."""
    pairs = []
    while len(pairs) < n:
        Ul = random_state(rng)
        Ur = random_state(rng)
        if classify(Ul, Ur, p) is not Region.CLASSICAL:
            continue
        try:
            solve_classical(Ul, Ur, p)
        except Exception:
            continue
        pairs.append((Ul, Ur))
    return pairs
