"""Independent oracles used by the tests.

Deliberately built on different machinery than the library paths they check:
dense numpy linear algebra for stationary vectors, direct Monte Carlo for
hitting probabilities, and scan+bisection for real polynomial roots.
"""
from __future__ import annotations

from math import sqrt

import numpy as np

from queuemax import GeoParams, increment_distribution


def truncated_transition_matrix(params: GeoParams, size: int) -> np.ndarray:
    """Dense transition matrix on states 0..size-1, overflow mass absorbed at the top."""
    c = params.c
    matrix = np.zeros((size, size))
    for state in range(size):
        pmf = increment_distribution(params, min(state, c))
        for step, prob in zip(pmf.support, pmf.probabilities):
            target = min(max(state + int(step), 0), size - 1)
            matrix[state, target] += prob
    return matrix


def truncated_stationary_vector(params: GeoParams, size: int = 401) -> np.ndarray:
    """Stationary vector of the truncated chain: solve pi P = pi, sum pi = 1."""
    matrix = truncated_transition_matrix(params, size)
    system = matrix.T - np.eye(size)
    system[-1, :] = 1.0
    rhs = np.zeros(size)
    rhs[-1] = 1.0
    return np.linalg.solve(system, rhs)


def mc_hitting_probability(params: GeoParams, start: int, walks: int, seed: int,
                           floor: int = -80):
    """Direct simulation of the fully-busy walk: P{ever exactly hit 0 from start}.

    Walks that sink below `floor` are counted as misses; the truncation bias
    is bounded by omega^|floor|, far below the Monte Carlo noise here.
    Returns (estimate, standard error).
    """
    rng = np.random.default_rng(seed)
    pmf = increment_distribution(params, params.c)
    steps = pmf.support.astype(np.int64)
    cumulative = np.cumsum(pmf.probabilities)
    position = np.full(walks, start, dtype=np.int64)
    hit = np.zeros(walks, dtype=bool)
    active = np.ones(walks, dtype=bool)
    for _ in range(10_000_000):
        remaining = int(active.sum())
        if remaining == 0:
            break
        draw = steps[np.searchsorted(cumulative, rng.random(remaining))]
        position[active] += draw
        landed = position == 0
        hit |= landed & active
        active &= ~landed & (position > floor)
    estimate = float(hit.mean())
    return estimate, sqrt(estimate * (1.0 - estimate) / walks)


def real_roots_by_bisection(coeffs, lo: float, hi: float, samples: int = 20000):
    """Real roots of a polynomial (ascending coeffs) found by scan + bisection."""
    def value(x: float) -> float:
        acc = 0.0
        for coeff in reversed(coeffs):
            acc = acc * x + coeff
        return acc

    grid = np.linspace(lo, hi, samples)
    roots = []
    for left, right in zip(grid[:-1], grid[1:]):
        f_left, f_right = value(left), value(right)
        if f_left == 0.0:
            roots.append(float(left))
            continue
        if f_left * f_right < 0.0:
            a, b = float(left), float(right)
            for _ in range(200):
                mid = 0.5 * (a + b)
                if value(a) * value(mid) <= 0.0:
                    b = mid
                else:
                    a = mid
            roots.append(0.5 * (a + b))
    return roots
