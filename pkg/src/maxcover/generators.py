"""Seeded instance generators, including the adversarial twin pair."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from maxcover.instancefile import InstanceFile, SetSpec


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def generate_random(n: int, m_max: int, k: int, universe: int | None = None,
                    seed: int = 0,
                    bias=(0.0, 0.0, 0.0, 0.0)) -> InstanceFile:
    """n sets, each a uniform subset of {1..universe} of size 1..m_max."""
    if n < 1 or m_max < 1:
        raise ValueError("need n >= 1 and m_max >= 1")
    universe = universe if universe is not None else 2 * m_max
    if universe < m_max:
        raise ValueError("universe must be at least m_max")
    rng = _rng(seed)
    sets = []
    for _ in range(n):
        size = int(rng.integers(1, m_max + 1))
        members = rng.choice(universe, size=size, replace=False) + 1
        sets.append(SetSpec.explicit(sorted(int(x) for x in members)))
    return InstanceFile(k=k, sets=tuple(sets), bias=tuple(bias), seed=seed)


def generate_disjoint(n: int, m: int, k: int, seed: int = 0) -> InstanceFile:
    """n pairwise-disjoint sets of size m: any k indices are optimal."""
    sets = [SetSpec.explicit(range(i * m + 1, (i + 1) * m + 1)) for i in range(n)]
    return InstanceFile(k=k, sets=tuple(sets), seed=seed)


def generate_overlap_chain(n: int, m: int, step: int, k: int, seed: int = 0) -> InstanceFile:
    """Sets of size m whose starts advance by `step`, so neighbors overlap."""
    if not 1 <= step <= m:
        raise ValueError("need 1 <= step <= m")
    sets = [SetSpec.explicit(range(i * step + 1, i * step + m + 1)) for i in range(n)]
    return InstanceFile(k=k, sets=tuple(sets), seed=seed)


def generate_rectangles(n: int, dim: int, coord_max: int, k: int,
                        seed: int = 0) -> InstanceFile:
    """Random integer boxes in [0, coord_max]^dim."""
    rng = _rng(seed)
    sets = []
    for _ in range(n):
        a = rng.integers(0, coord_max + 1, size=dim)
        b = rng.integers(0, coord_max + 1, size=dim)
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        sets.append(SetSpec.rectangle(lo.tolist(), hi.tolist()))
    return InstanceFile(k=k, sets=tuple(sets), seed=seed)


@dataclass(frozen=True)
class TwinPair:
    """Indistinguishable-looking lists with optima m/d versus m.

    In `left`, all n sets equal {1..m/d}. In `right`, the sets at
    block_indices are replaced by the d disjoint blocks of {1..m}, so the
    optimum jumps from m/d to m for any k >= d.
    """

    left: InstanceFile
    right: InstanceFile
    n: int
    m: int
    d: int
    block_indices: tuple[int, ...]


def generate_twin(n: int, m: int, d: int, k: int, seed: int = 0) -> TwinPair:
    if m % d != 0:
        raise ValueError(f"d must divide m, got m={m}, d={d}")
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    rng = _rng(seed)
    block = m // d
    base = tuple(range(1, block + 1))
    block_indices = tuple(sorted(int(i) for i in
                                 rng.choice(n, size=d, replace=False)))
    left_sets = tuple(SetSpec.explicit(base) for _ in range(n))
    right_sets = []
    next_block = 0
    for i in range(n):
        if i in block_indices:
            start = next_block * block
            right_sets.append(SetSpec.explicit(range(start + 1, start + block + 1)))
            next_block += 1
        else:
            right_sets.append(SetSpec.explicit(base))
    left = InstanceFile(k=k, sets=left_sets, seed=seed)
    right = InstanceFile(k=k, sets=tuple(right_sets), seed=seed)
    return TwinPair(left=left, right=right, n=n, m=m, d=d,
                    block_indices=block_indices)


GENERATORS = {
    "random": generate_random,
    "disjoint": generate_disjoint,
    "overlap-chain": generate_overlap_chain,
    "rectangles": generate_rectangles,
    "twin": generate_twin,
}
