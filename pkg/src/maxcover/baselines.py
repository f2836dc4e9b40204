"""Exact references: classical greedy, brute-force optima, and the
equal-size padding reduction."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations


class SubsetCapError(RuntimeError):
    """Exhaustive enumeration would exceed the configured subset cap."""


@dataclass(frozen=True)
class ExactSolution:
    indices: tuple[int, ...]
    coverage: int


def _as_sets(sets) -> list[frozenset]:
    return [frozenset(int(x) for x in s) for s in sets]


def exact_greedy(sets, k: int) -> ExactSolution:
    """Classical greedy: each round take the set covering the most uncovered
    elements (earliest index on ties)."""
    sets = _as_sets(sets)
    if not 1 <= k <= len(sets):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={len(sets)}")
    covered: set[int] = set()
    chosen: list[int] = []
    for _ in range(k):
        best_gain = -1
        best_i = None
        for i, s in enumerate(sets):
            if i in chosen:
                continue
            gain = len(s - covered)
            if gain > best_gain:
                best_gain = gain
                best_i = i
        chosen.append(best_i)
        covered |= sets[best_i]
    return ExactSolution(indices=tuple(chosen), coverage=len(covered))


def brute_force_optimum(sets, k: int, cap: int = 10 ** 6) -> ExactSolution:
    """Exhaustive maximum over all k-subsets; lexicographically smallest
    index set wins ties."""
    sets = _as_sets(sets)
    n = len(sets)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if math.comb(n, k) > cap:
        raise SubsetCapError(f"C({n},{k}) exceeds the cap {cap}")
    best = None
    best_cov = -1
    for combo in combinations(range(n), k):
        cov = len(frozenset().union(*(sets[i] for i in combo)))
        if cov > best_cov:
            best_cov = cov
            best = combo
    return ExactSolution(indices=best, coverage=best_cov)


def brute_force_min_cover(sets, universe=None, cap: int = 10 ** 6) -> int | None:
    """Smallest number of sets whose union equals the universe (default: the
    union of all sets); None when no cover exists."""
    sets = _as_sets(sets)
    universe = frozenset(universe) if universe is not None \
        else frozenset().union(*sets)
    if not universe <= frozenset().union(*sets):
        return None
    n = len(sets)
    checked = 0
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            checked += 1
            if checked > cap:
                raise SubsetCapError(f"enumeration exceeds the cap {cap}")
            if frozenset().union(*(sets[i] for i in combo)) >= universe:
                return size
    return None


def equal_size_pad(sets, mode: str = "set-cover"):
    """Pad every set to a common size while preserving cover structure.

    set-cover mode: prepend a fresh set A0 of t = max size brand-new
    elements and pad each A_i with the first (t - |A_i|) elements of A0;
    the original has a k-set cover iff the output has a (k+1)-set cover.

    max-cover mode: the first set must be (one of) the largest; pad each
    later A_j with the first (|A_1| - |A_j|) elements of A_1 - A_j.

    "First u elements" means ascending element value.
    """
    sets = _as_sets(sets)
    if any(not s for s in sets):
        raise ValueError("padding requires nonempty sets")
    sizes = [len(s) for s in sets]
    t = max(sizes)

    if mode == "set-cover":
        base = max((max(s) for s in sets), default=0) + 1
        a0 = list(range(base, base + t))
        padded = [frozenset(a0)]
        for s in sets:
            padded.append(s | frozenset(a0[: t - len(s)]))
        return padded

    if mode == "max-cover":
        if sizes[0] != t:
            raise ValueError("max-cover mode requires the first set to be largest")
        first = sets[0]
        padded = [first]
        for s in sets[1:]:
            filler = sorted(first - s)[: len(first) - len(s)]
            padded.append(s | frozenset(filler))
        return padded

    raise ValueError(f"unknown mode {mode!r}")
