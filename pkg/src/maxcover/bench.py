"""Benchmarks: access-cost counters across member counts, and membership
kernel timings for the compiled and fallback implementations."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from maxcover import generators, instancefile, kernels
from maxcover.greedy import approximate_maximum_cover


@dataclass(frozen=True)
class CounterRow:
    m: int
    steps: int
    random_draws: int
    membership_queries: int
    wall_seconds: float


def counter_rows(sizes=(10 ** 3, 10 ** 4, 10 ** 5), n: int = 6, k: int = 2,
                 xi: float = 0.5, gamma: float = 0.25, seed: int = 0,
                 strategy: str = "single", backend: str = "sorted"):
    """Solve disjoint instances of growing member count m; the counted
    accesses stay flat while wall time tracks the per-access data size."""
    rows = []
    for m in sizes:
        instfile = generators.generate_disjoint(n=n, m=m, k=k, seed=seed)
        instance = instancefile.build_instance(instfile, backend)
        start = time.perf_counter()
        result = approximate_maximum_cover(instance, xi=xi, gamma=gamma,
                                           strategy=strategy, seed=seed)
        elapsed = time.perf_counter() - start
        c = result.counters
        rows.append(CounterRow(m, c.steps, c.random_draws,
                               c.membership_queries, elapsed))
    return rows


@dataclass(frozen=True)
class KernelRow:
    kernel: str
    implementation: str
    set_size: int
    queries: int
    seconds: float


def kernel_rows(set_size: int = 10 ** 5, queries: int = 10 ** 6,
                repeats: int = 3, seed: int = 0):
    """Time contains_sorted / contains_linear / rect_contains under every
    available kernel implementation; best of `repeats`."""
    rng = np.random.default_rng(seed)
    items = np.unique(rng.integers(0, 2 ** 48, size=set_size, dtype=np.uint64))
    xs = rng.integers(0, 2 ** 48, size=queries, dtype=np.uint64)
    out = np.empty(queries, dtype=np.uint8)
    lo = np.asarray([-100, -100], dtype=np.int64)
    hi = np.asarray([100, 100], dtype=np.int64)

    rows = []
    for name, impl in kernels.implementations().items():
        cases = [
            ("contains_sorted", lambda: impl.contains_sorted(items, xs, out),
             items.size),
            ("contains_linear",
             lambda: impl.contains_linear(items[:256], xs, out), 256),
            ("rect_contains", lambda: impl.rect_contains(lo, hi, 32, xs, out),
             201 * 201),
        ]
        for kernel_name, call, size in cases:
            best = min(_timed(call) for _ in range(repeats))
            rows.append(KernelRow(kernel_name, name, size, queries, best))
    return rows


def _timed(call) -> float:
    start = time.perf_counter()
    call()
    return time.perf_counter() - start


def counter_csv(rows) -> str:
    lines = ["m,steps,random_draws,membership_queries,wall_seconds"]
    for r in rows:
        lines.append(f"{r.m},{r.steps},{r.random_draws},"
                     f"{r.membership_queries},{r.wall_seconds:.6f}")
    return "\n".join(lines) + "\n"


def kernel_csv(rows) -> str:
    lines = ["kernel,implementation,set_size,queries,seconds"]
    for r in rows:
        lines.append(f"{r.kernel},{r.implementation},{r.set_size},"
                     f"{r.queries},{r.seconds:.6f}")
    return "\n".join(lines) + "\n"
