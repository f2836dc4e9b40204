"""Black-box set access: bias profiles, counted handles, coverage instances.

Every set is reached only through a handle that exposes a reported size, a
random-element generator and membership queries, and charges each access to
the shared cost counters (steps T, random draws R, membership queries Q).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

Element = int  # canonical 64-bit unsigned universe encoding


class EmptySetError(ValueError):
    """A random element was requested from an empty set."""


@dataclass(frozen=True)
class BiasProfile:
    """Sampling bias (alpha_l, alpha_r) and size bias (delta_l, delta_r)."""

    alpha_l: float = 0.0
    alpha_r: float = 0.0
    delta_l: float = 0.0
    delta_r: float = 0.0

    def __post_init__(self):
        for name in ("alpha_l", "alpha_r", "delta_l", "delta_r"):
            value = getattr(self, name)
            if not 0.0 <= value < 1.0:
                raise ValueError(f"{name} must lie in [0, 1), got {value!r}")

    def beta(self) -> float:
        """Combined bias ratio; 1.0 exactly for the all-zero profile."""
        return ((1.0 - self.alpha_l) * (1.0 - self.delta_l)
                / ((1.0 + self.alpha_r) * (1.0 + self.delta_r)))

    def is_zero(self) -> bool:
        return self == ZERO_BIAS

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha_l, self.alpha_r, self.delta_l, self.delta_r)


ZERO_BIAS = BiasProfile()


@dataclass(frozen=True)
class CounterSnapshot:
    steps: int = 0
    random_draws: int = 0
    membership_queries: int = 0

    def __sub__(self, other: "CounterSnapshot") -> "CounterSnapshot":
        return CounterSnapshot(
            self.steps - other.steps,
            self.random_draws - other.random_draws,
            self.membership_queries - other.membership_queries,
        )


class CostCounters:
    """Monotone counters for the (T, R, Q) complexity triple.

    Increments are batched and lock-protected so concurrent read-only
    workers can share one instance.
    """

    __slots__ = ("_lock", "steps", "random_draws", "membership_queries")

    def __init__(self):
        self._lock = threading.Lock()
        self.steps = 0
        self.random_draws = 0
        self.membership_queries = 0

    def add_draws(self, n: int = 1) -> None:
        with self._lock:
            self.random_draws += n
            self.steps += n

    def add_queries(self, n: int = 1) -> None:
        with self._lock:
            self.membership_queries += n
            self.steps += n

    def add_steps(self, n: int = 1) -> None:
        with self._lock:
            self.steps += n

    def snapshot(self) -> CounterSnapshot:
        with self._lock:
            return CounterSnapshot(self.steps, self.random_draws,
                                   self.membership_queries)


class SetHandle:
    """Counted view of one backend set, with an (approximate) reported size."""

    __slots__ = ("set_id", "backend", "reported_size", "counters")

    def __init__(self, set_id: int, backend, reported_size: float,
                 counters: CostCounters):
        if reported_size < 0:
            raise ValueError("reported_size must be nonnegative")
        self.set_id = set_id
        self.backend = backend
        self.reported_size = float(reported_size)
        self.counters = counters

    def random_element(self, rng) -> Element:
        return int(self.draw_many(1, rng)[0])

    def draw_many(self, count: int, rng) -> np.ndarray:
        if self.backend.size() == 0:
            raise EmptySetError(f"set {self.set_id} is empty")
        self.counters.add_draws(count)
        return self.backend.draw_many(count, rng)

    def member(self, x: Element) -> bool:
        self.counters.add_queries(1)
        return bool(self.backend.contains(int(x)))

    def contains_many(self, xs: np.ndarray) -> np.ndarray:
        xs = np.ascontiguousarray(xs, dtype=np.uint64)
        self.counters.add_queries(len(xs))
        return self.backend.contains_many(xs)

    def exact_size(self) -> int:
        return self.backend.size()


def make_handle(backend, bias: BiasProfile = ZERO_BIAS, rng=None,
                set_id: int = 0, counters: CostCounters | None = None) -> SetHandle:
    """Wrap a backend, drawing a reported size within the delta envelope."""
    counters = counters if counters is not None else CostCounters()
    size = backend.size()
    if size == 0:
        reported = 0.0
    elif bias.delta_l == 0.0 and bias.delta_r == 0.0:
        reported = float(size)
    else:
        if rng is None:
            raise ValueError("an rng is required to draw a biased reported size")
        lo = (1.0 - bias.delta_l) * size
        hi = (1.0 + bias.delta_r) * size
        reported = float(rng.uniform(lo, hi))
    return SetHandle(set_id, backend, reported, counters)


class CoverageInstance:
    """An ordered list of set handles plus the selection budget k."""

    def __init__(self, handles: list[SetHandle], k: int,
                 bias: BiasProfile = ZERO_BIAS,
                 counters: CostCounters | None = None,
                 allow_empty: bool = False):
        n = len(handles)
        if n < 1:
            raise ValueError("an instance needs at least one set")
        if not 1 <= k <= n:
            raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
        if not allow_empty:
            for h in handles:
                if h.exact_size() == 0:
                    raise ValueError(f"set {h.set_id} is empty; pass allow_empty=True to permit")
        self.handles = list(handles)
        self.k = int(k)
        self.bias = bias
        self.counters = counters if counters is not None else handles[0].counters

    @classmethod
    def from_backends(cls, backends, k: int, bias: BiasProfile = ZERO_BIAS,
                      rng=None, allow_empty: bool = False) -> "CoverageInstance":
        counters = CostCounters()
        handles = [
            make_handle(b, bias=bias, rng=rng, set_id=i, counters=counters)
            for i, b in enumerate(backends)
        ]
        return cls(handles, k, bias=bias, counters=counters, allow_empty=allow_empty)

    @property
    def n(self) -> int:
        return len(self.handles)

    def materialize(self) -> list[frozenset]:
        """Exact element sets, for baselines and verification only."""
        return [frozenset(int(x) for x in h.backend.elements()) for h in self.handles]


def check_size_envelope(handle: SetHandle, bias: BiasProfile) -> bool:
    """Does the reported size respect the delta bounds of the profile?"""
    size = handle.exact_size()
    if size == 0:
        return handle.reported_size == 0.0
    lo = (1.0 - bias.delta_l) * size
    hi = (1.0 + bias.delta_r) * size
    return lo <= handle.reported_size <= hi or math.isclose(lo, handle.reported_size) \
        or math.isclose(hi, handle.reported_size)
