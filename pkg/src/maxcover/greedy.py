"""Randomized greedy maximum-coverage selection.

k rounds; each round estimates the marginal gain of every candidate set via
a pluggable difference-estimation strategy and keeps the earliest-index
maximum (strict improvement over a running best initialized to -1).

Strategies:
  multi        fresh samples per (round, set) estimate
  single       one up-front sample cache per set; covered samples are marked
               black after each selection
  single-sort  as `single`, but each selected unsorted-array set is sorted
               on selection so the marking pass can binary-search
  exact        exact set-difference gains (reference semantics, no sampling)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from maxcover.backends import UnsortedArraySet
from maxcover.estimation import (
    approximate_difference,
    sample_count,
    shared_sample_budget_g,
)
from maxcover.oracle import CounterSnapshot, CoverageInstance, SetHandle

ETA = math.exp(-0.25)


def derive_xi(epsilon: float, beta: float, k: int) -> float:
    """Conservative accuracy parameter: min(eps*eta*beta / (4*e^beta*k), eps)."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta!r}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return min(epsilon * ETA * beta / (4.0 * math.exp(beta) * k), epsilon)


@dataclass(frozen=True)
class GreedyParams:
    xi: float
    gamma: float
    k: int
    epsilon_prime: float

    @classmethod
    def create(cls, xi: float, gamma: float, k: int) -> "GreedyParams":
        if not 0.0 < xi < 1.0:
            raise ValueError(f"xi must lie in (0, 1), got {xi!r}")
        if not 0.0 < gamma < 1.0:
            raise ValueError(f"gamma must lie in (0, 1), got {gamma!r}")
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        return cls(xi=xi, gamma=gamma, k=k, epsilon_prime=xi / (4.0 * k))


@dataclass(frozen=True)
class CoverageResult:
    indices: tuple[int, ...]
    z: float
    z_rounded: int
    gains: tuple[float, ...]
    counters: CounterSnapshot

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("selected indices must be distinct")


class SampleCache:
    """Per-set sample list with white/black marks. Blackened (covered)
    samples are physically dropped, so the retained array holds exactly the
    white samples (with multiplicity) outside the selected union."""

    __slots__ = ("samples", "w")

    def __init__(self, samples: np.ndarray):
        self.samples = samples
        self.w = len(samples)

    @property
    def white_count(self) -> int:
        return len(self.samples)

    def blacken(self, hits: np.ndarray) -> None:
        self.samples = self.samples[~hits]


class MultiRoundStrategy:
    """Fresh difference estimate per (round, set) at failure rate gamma/(4kn).

    Every set in the original list is estimated each round (selected ones
    are simply never re-chosen), so the total draw count is exactly
    k * n * sample_count(eps', gamma/(4kn))."""

    name = "multi"
    evaluates_selected = True

    def init(self, instance: CoverageInstance, params: GreedyParams, rng) -> None:
        n = instance.n
        self.gamma_prime = params.gamma / (4.0 * params.k * n)
        self.w = sample_count(params.epsilon_prime, self.gamma_prime)

    def estimate(self, selected, handle: SetHandle, params: GreedyParams, rng) -> float:
        est = approximate_difference(selected, handle, handle.reported_size,
                                     params.epsilon_prime, self.gamma_prime, rng)
        return est.s

    def after_select(self, handle: SetHandle, remaining) -> None:
        pass


class SingleRoundStrategy:
    """One shared sample cache per set, drawn up front; selections blacken
    covered samples so later gains are plain white counts."""

    name = "single"
    evaluates_selected = False

    def init(self, instance: CoverageInstance, params: GreedyParams, rng) -> None:
        self.w = shared_sample_budget_g(params.epsilon_prime, params.gamma,
                                        params.k, instance.n)
        self.caches = {h.set_id: SampleCache(h.draw_many(self.w, rng))
                       for h in instance.handles}

    def estimate(self, selected, handle: SetHandle, params: GreedyParams, rng) -> float:
        cache = self.caches[handle.set_id]
        return cache.white_count / self.w * handle.reported_size

    def after_select(self, handle: SetHandle, remaining) -> None:
        for other in remaining:
            cache = self.caches[other.set_id]
            if cache.white_count == 0:
                continue
            hits = handle.contains_many(cache.samples)
            handle.counters.add_steps(cache.white_count)  # mark pass
            cache.blacken(hits)


class SortOnSelectStrategy(SingleRoundStrategy):
    """Single-round semantics, but each selected set is sorted in place so
    the marking pass runs on binary search. Identical H and z to `single`
    under the same seed."""

    name = "single-sort"

    def init(self, instance: CoverageInstance, params: GreedyParams, rng) -> None:
        for h in instance.handles:
            if not isinstance(h.backend, UnsortedArraySet):
                raise TypeError("single-sort requires UnsortedArraySet backends")
        super().init(instance, params, rng)

    def after_select(self, handle: SetHandle, remaining) -> None:
        handle.backend.sort_in_place()
        super().after_select(handle, remaining)


class ExactDifferenceStrategy:
    """Classical greedy on materialized sets; oracle reference, no sampling."""

    name = "exact"
    evaluates_selected = False

    def init(self, instance: CoverageInstance, params: GreedyParams, rng) -> None:
        self.sets = {h.set_id: frozenset(int(x) for x in h.backend.elements())
                     for h in instance.handles}
        self.covered: set[int] = set()

    def estimate(self, selected, handle: SetHandle, params: GreedyParams, rng) -> float:
        return float(len(self.sets[handle.set_id] - self.covered))

    def after_select(self, handle: SetHandle, remaining) -> None:
        self.covered |= self.sets[handle.set_id]


STRATEGIES = {
    cls.name: cls
    for cls in (MultiRoundStrategy, SingleRoundStrategy, SortOnSelectStrategy,
                ExactDifferenceStrategy)
}


def approximate_maximum_cover(instance: CoverageInstance, *, gamma: float,
                              xi: float | None = None,
                              epsilon: float | None = None,
                              strategy: str = "single",
                              rng=None, seed=None) -> CoverageResult:
    """Select k of the instance's sets to approximately maximize the union.

    Pass the accuracy either as `xi` (used directly as the per-run accuracy
    parameter; the gain tolerance is eps' = xi/4k) or as `epsilon` (mapped
    through derive_xi with the instance's bias ratio, which is far more
    conservative and drives the sample counts up by a k^2 factor).
    """
    if (xi is None) == (epsilon is None):
        raise ValueError("pass exactly one of xi or epsilon")
    if xi is None:
        xi = derive_xi(epsilon, instance.bias.beta(), instance.k)
    params = GreedyParams.create(xi, gamma, instance.k)
    if rng is None:
        rng = np.random.default_rng(seed)

    strat = STRATEGIES[strategy]() if isinstance(strategy, str) else strategy
    start = instance.counters.snapshot()
    strat.init(instance, params, rng)

    selected_handles: list[SetHandle] = []
    selected_ids: set[int] = set()
    remaining = list(instance.handles)
    indices: list[int] = []
    gains: list[float] = []
    z = 0.0

    for _ in range(instance.k):
        pool = instance.handles if strat.evaluates_selected else remaining
        best = -1.0
        chosen = None
        for handle in pool:
            gain = strat.estimate(selected_handles, handle, params, rng)
            if handle.set_id in selected_ids:
                continue
            if gain > best:
                best = gain
                chosen = handle
        indices.append(chosen.set_id)
        selected_ids.add(chosen.set_id)
        gains.append(best)
        z += best
        remaining.remove(chosen)
        strat.after_select(chosen, remaining)
        selected_handles.append(chosen)

    delta = instance.counters.snapshot() - start
    return CoverageResult(indices=tuple(indices), z=z, z_rounded=round(z),
                          gains=tuple(gains), counters=delta)
