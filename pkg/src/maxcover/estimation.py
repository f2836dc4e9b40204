"""Monte Carlo estimation of |B - union(A_1..A_u)| and the sample-size math.

The sample count w is the least integer with exp(-w * (eps/3)^2 / 2) <= gamma/4,
evaluated in log space and cross-checked against the defining inequality so
floating-point rounding can never return a non-minimal or insufficient w.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from maxcover.oracle import SetHandle

H_STAR_CAP = 2 ** 63 - 1


def _check_unit_open(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {value!r}")


def mu(x: float) -> float:
    """exp(-x^2 / 2); the per-sample failure factor of the tail bound."""
    return math.exp(-0.5 * x * x)


@dataclass(frozen=True)
class DiffEstimate:
    """Outcome of one difference estimation: t hits outside the union out of
    w samples, scaled by the reported size s2."""

    t: int
    w: int
    s: float


@dataclass(frozen=True)
class SampleBudget:
    epsilon: float
    gamma: float
    w: int

    @classmethod
    def derive(cls, epsilon: float, gamma: float) -> "SampleBudget":
        return cls(epsilon, gamma, sample_count(epsilon, gamma))


def _holds(w: int, epsilon: float, log_rhs: float) -> bool:
    # mu(eps/3)^w <= rhs, in log space
    return -w * epsilon * epsilon / 18.0 <= log_rhs


def sample_count(epsilon: float, gamma: float) -> int:
    """Least w with mu(eps/3)^w <= gamma/4."""
    _check_unit_open("epsilon", epsilon)
    _check_unit_open("gamma", gamma)
    log_rhs = math.log(gamma / 4.0)
    w = max(1, math.ceil(18.0 * math.log(4.0 / gamma) / (epsilon * epsilon)))
    while not _holds(w, epsilon, log_rhs):
        w += 1
    while w > 1 and _holds(w - 1, epsilon, log_rhs):
        w -= 1
    return w


def random_test(selected, b: SetHandle, w: int, rng) -> int:
    """Draw w samples from B; count how many fall outside the union of the
    selected sets. Membership is short-circuited in selection order, so at
    most u*w queries are issued."""
    if w < 1:
        raise ValueError("w must be >= 1")
    samples = b.draw_many(w, rng)
    outside = np.ones(w, dtype=bool)
    for handle in selected:
        idx = np.flatnonzero(outside)
        if idx.size == 0:
            break
        hits = handle.contains_many(samples[idx])
        outside[idx[hits]] = False
    return int(outside.sum())


def approximate_difference(selected, b: SetHandle, s2: float, epsilon: float,
                           gamma: float, rng) -> DiffEstimate:
    """Estimate |B - union(selected)| as (t/w) * s2."""
    w = sample_count(epsilon, gamma)
    t = random_test(selected, b, w, rng)
    return DiffEstimate(t=t, w=w, s=t / w * float(s2))


def subset_count_h_star(k: int, n: int) -> tuple[int, bool]:
    """Number of subsets of {1..n} of size at most k, saturating at 2^63-1.

    Returns (value, saturated). Only the logarithm is consumed downstream;
    log_subset_count gives it exactly even past the cap.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    total = sum(math.comb(n, i) for i in range(k + 1))
    if total > H_STAR_CAP:
        return H_STAR_CAP, True
    return total, False


def log_subset_count(k: int, n: int) -> float:
    """Exact natural log of the (unsaturated) subset count."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return math.log(sum(math.comb(n, i) for i in range(k + 1)))


def shared_sample_budget_g(epsilon: float, gamma: float, k: int, n: int) -> int:
    """Per-set sample budget for the shared single-round cache: the sample
    count at the union-bounded failure rate gamma / (n * h*(k, n)),
    computed in log space to avoid overflow."""
    _check_unit_open("epsilon", epsilon)
    _check_unit_open("gamma", gamma)
    log_target = math.log(4.0 / gamma) + math.log(n) + log_subset_count(k, n)
    log_rhs = -log_target
    w = max(1, math.ceil(18.0 * log_target / (epsilon * epsilon)))
    while not _holds(w, epsilon, log_rhs):
        w += 1
    while w > 1 and _holds(w - 1, epsilon, log_rhs):
        w -= 1
    return w
