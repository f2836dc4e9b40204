"""Concrete set backends: sorted/unsorted arrays, counted B-tree, bucketed
hash table, and d-dimensional integer-lattice rectangles.

All backends answer the same protocol: size(), draw_many(count, rng),
contains(x), contains_many(xs), elements(). Random draws are uniform over
the members unless the backend is wrapped in a SkewedBackend.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from fractions import Fraction

import numpy as np

from maxcover import kernels
from maxcover.oracle import Element, EmptySetError


class PackingError(OverflowError):
    """Coordinate ranges exceed the lattice packing budget."""


class InfeasibleSkewError(ValueError):
    """The requested (alpha_l, alpha_r) envelope cannot be realized."""


class SortedArraySet:
    """Strictly increasing, duplicate-free array; membership by binary search."""

    def __init__(self, items):
        self.items = np.unique(np.asarray(list(items), dtype=np.uint64))

    def size(self) -> int:
        return int(self.items.size)

    def draw_many(self, count: int, rng) -> np.ndarray:
        idx = rng.integers(0, self.items.size, size=count)
        return self.items[idx]

    def contains(self, x: Element) -> bool:
        i = int(np.searchsorted(self.items, np.uint64(x)))
        return i < self.items.size and int(self.items[i]) == int(x)

    def contains_many(self, xs: np.ndarray) -> np.ndarray:
        return kernels.contains_sorted(self.items, xs)

    def elements(self) -> np.ndarray:
        return self.items


class UnsortedArraySet:
    """Duplicate-free array in arbitrary order; can be sorted in place once."""

    def __init__(self, items):
        arr = np.asarray(list(items), dtype=np.uint64)
        _, first = np.unique(arr, return_index=True)
        self.items = arr[np.sort(first)]
        self.sorted_flag = bool(np.all(self.items[:-1] < self.items[1:]))

    def size(self) -> int:
        return int(self.items.size)

    def sort_in_place(self) -> None:
        self.items.sort()
        self.sorted_flag = True

    def draw_many(self, count: int, rng) -> np.ndarray:
        idx = rng.integers(0, self.items.size, size=count)
        return self.items[idx]

    def contains(self, x: Element) -> bool:
        if self.sorted_flag:
            i = int(np.searchsorted(self.items, np.uint64(x)))
            return i < self.items.size and int(self.items[i]) == int(x)
        return bool(np.any(self.items == np.uint64(x)))

    def contains_many(self, xs: np.ndarray) -> np.ndarray:
        if self.sorted_flag:
            return kernels.contains_sorted(self.items, xs)
        return kernels.contains_linear(self.items, xs)

    def elements(self) -> np.ndarray:
        return self.items


class _BNode:
    __slots__ = ("leaf", "keys", "children", "count")

    def __init__(self, leaf: bool):
        self.leaf = leaf
        self.keys: list = []       # leaf: elements; internal: max key per child
        self.children: list = []   # internal only
        self.count = 0             # elements stored in this subtree


class CountedBTree:
    """B-tree keeping all elements at the leaf level, one leaf slot per
    distinct element, with per-node subtree element counts for uniform
    random selection in O(log m)."""

    def __init__(self, items=(), order: int = 16):
        if order < 3:
            raise ValueError("order must be >= 3")
        self.order = order
        self.root = _BNode(leaf=True)
        for x in items:
            self.insert(x)

    # -- queries ---------------------------------------------------------

    def size(self) -> int:
        return self.root.count

    def contains(self, x: Element) -> bool:
        x = int(x)
        node = self.root
        while not node.leaf:
            i = bisect_left(node.keys, x)
            if i == len(node.children):
                return False
            node = node.children[i]
        i = bisect_left(node.keys, x)
        return i < len(node.keys) and node.keys[i] == x

    def contains_many(self, xs: np.ndarray) -> np.ndarray:
        return np.fromiter((self.contains(int(x)) for x in xs), dtype=bool,
                           count=len(xs))

    def elements(self) -> np.ndarray:
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.leaf:
                out.extend(node.keys)
            else:
                stack.extend(reversed(node.children))
        out.sort()
        return np.asarray(out, dtype=np.uint64)

    # -- random selection ------------------------------------------------

    def random_element(self, rng) -> Element:
        if self.root.count == 0:
            raise EmptySetError("empty tree")
        node = self.root
        while not node.leaf:
            i = int(rng.integers(1, node.count + 1))
            acc = 0
            for child in node.children:
                acc += child.count
                if i <= acc:
                    node = child
                    break
        return node.keys[int(rng.integers(0, len(node.keys)))]

    def draw_many(self, count: int, rng) -> np.ndarray:
        return np.fromiter((self.random_element(rng) for _ in range(count)),
                           dtype=np.uint64, count=count)

    def leaf_probabilities(self) -> dict:
        """Exact selection probability of each element under the counted
        descent (should be uniform)."""
        probs: dict = {}

        def walk(node, p: Fraction):
            if node.leaf:
                share = p / len(node.keys) if node.keys else p
                for key in node.keys:
                    probs[key] = share
            else:
                for child in node.children:
                    walk(child, p * Fraction(child.count, node.count))

        if self.root.count:
            walk(self.root, Fraction(1))
        return probs

    # -- mutation --------------------------------------------------------

    def insert(self, x: Element) -> bool:
        added, sibling = self._insert(self.root, int(x))
        if sibling is not None:
            old_root = self.root
            root = _BNode(leaf=False)
            root.children = [old_root, sibling]
            root.keys = [self._max_key(old_root), self._max_key(sibling)]
            root.count = old_root.count + sibling.count
            self.root = root
        return added

    def delete(self, x: Element) -> bool:
        removed = self._delete(self.root, int(x))
        if not self.root.leaf and len(self.root.children) == 1:
            self.root = self.root.children[0]
        return removed

    @staticmethod
    def _max_key(node: _BNode):
        return node.keys[-1]

    def _insert(self, node: _BNode, x: int):
        if node.leaf:
            i = bisect_left(node.keys, x)
            if i < len(node.keys) and node.keys[i] == x:
                return False, None
            node.keys.insert(i, x)
            node.count += 1
            if len(node.keys) > self.order:
                return True, self._split(node)
            return True, None
        i = bisect_left(node.keys, x)
        if i == len(node.children):
            i -= 1
        child = node.children[i]
        added, sibling = self._insert(child, x)
        if not added:
            return False, None
        node.count += 1
        node.keys[i] = self._max_key(child)
        if sibling is not None:
            node.children.insert(i + 1, sibling)
            node.keys.insert(i + 1, self._max_key(sibling))
            node.keys[i] = self._max_key(child)
            if len(node.children) > self.order:
                return True, self._split(node)
        return True, None

    def _split(self, node: _BNode) -> _BNode:
        right = _BNode(leaf=node.leaf)
        if node.leaf:
            mid = len(node.keys) // 2
            right.keys = node.keys[mid:]
            node.keys = node.keys[:mid]
            right.count = len(right.keys)
            node.count = len(node.keys)
        else:
            mid = len(node.children) // 2
            right.children = node.children[mid:]
            right.keys = node.keys[mid:]
            node.children = node.children[:mid]
            node.keys = node.keys[:mid]
            right.count = sum(c.count for c in right.children)
            node.count = sum(c.count for c in node.children)
        return right

    def _fill(self, node: _BNode) -> int:
        return len(node.keys) if node.leaf else len(node.children)

    def _delete(self, node: _BNode, x: int) -> bool:
        if node.leaf:
            i = bisect_left(node.keys, x)
            if i >= len(node.keys) or node.keys[i] != x:
                return False
            node.keys.pop(i)
            node.count -= 1
            return True
        i = bisect_left(node.keys, x)
        if i == len(node.children):
            return False
        child = node.children[i]
        if not self._delete(child, x):
            return False
        node.count -= 1
        if self._fill(child) < self.order // 2:
            self._rebalance(node, i)
        else:
            node.keys[i] = self._max_key(child)
        return True

    def _refresh(self, parent: _BNode, j: int) -> None:
        parent.keys[j] = self._max_key(parent.children[j])

    def _rebalance(self, parent: _BNode, i: int) -> None:
        minimum = self.order // 2
        child = parent.children[i]
        left = parent.children[i - 1] if i > 0 else None
        right = parent.children[i + 1] if i + 1 < len(parent.children) else None

        if left is not None and self._fill(left) > minimum:
            if child.leaf:
                key = left.keys.pop()
                child.keys.insert(0, key)
                left.count -= 1
                child.count += 1
            else:
                moved = left.children.pop()
                left.keys.pop()
                child.children.insert(0, moved)
                child.keys.insert(0, self._max_key(moved))
                left.count -= moved.count
                child.count += moved.count
            self._refresh(parent, i - 1)
            self._refresh(parent, i)
        elif right is not None and self._fill(right) > minimum:
            if child.leaf:
                key = right.keys.pop(0)
                child.keys.append(key)
                right.count -= 1
                child.count += 1
            else:
                moved = right.children.pop(0)
                right.keys.pop(0)
                child.children.append(moved)
                child.keys.append(self._max_key(moved))
                right.count -= moved.count
                child.count += moved.count
            self._refresh(parent, i)
            self._refresh(parent, i + 1)
        elif left is not None:
            left.keys.extend(child.keys)
            if not child.leaf:
                left.children.extend(child.children)
            left.count += child.count
            parent.children.pop(i)
            parent.keys.pop(i)
            self._refresh(parent, i - 1)
        else:
            child.keys.extend(right.keys)
            if not child.leaf:
                child.children.extend(right.children)
            child.count += right.count
            parent.children.pop(i + 1)
            parent.keys.pop(i + 1)
            self._refresh(parent, i)

    # -- diagnostics -----------------------------------------------------

    def check_invariants(self) -> None:
        """Recompute counts, ordering, balance and fill bottom-up; raise on
        any mismatch with the stored structure."""
        minimum = self.order // 2

        def walk(node, is_root):
            if node.leaf:
                if node.keys != sorted(set(node.keys)):
                    raise AssertionError("leaf keys not strictly sorted")
                if not is_root and len(node.keys) < minimum:
                    raise AssertionError("leaf underfull")
                if len(node.keys) > self.order:
                    raise AssertionError("leaf overfull")
                if node.count != len(node.keys):
                    raise AssertionError("leaf count mismatch")
                return len(node.keys), 1
            if not (2 if is_root else minimum) <= len(node.children) <= self.order:
                raise AssertionError("internal fill out of bounds")
            if len(node.keys) != len(node.children):
                raise AssertionError("keys/children length mismatch")
            total = 0
            depths = set()
            for j, child in enumerate(node.children):
                cnt, depth = walk(child, False)
                total += cnt
                depths.add(depth)
                if node.keys[j] != self._max_key(child):
                    raise AssertionError("stale max key")
            if node.keys != sorted(node.keys):
                raise AssertionError("internal keys not sorted")
            if total != node.count:
                raise AssertionError("internal count mismatch")
            if len(depths) != 1:
                raise AssertionError("unbalanced subtrees")
            return total, depths.pop() + 1

        if self.root.count or not self.root.leaf:
            walk(self.root, True)


def _splitmix64(x: np.ndarray | int) -> np.ndarray | int:
    """64-bit mixing hash (splitmix64 finalizer)."""
    mask = 0xFFFFFFFFFFFFFFFF
    x = (int(x) + 0x9E3779B97F4A7C15) & mask
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & mask
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & mask
    return x ^ (x >> 31)


class BucketHashSet:
    """Backing array for O(1) random draws plus seeded bucket chains for
    membership; the table doubles when full and halves below half use."""

    _MIN_TABLE = 8

    def __init__(self, items=(), hash_seed: int = 0):
        self.hash_seed = int(hash_seed)
        self.table_size = self._MIN_TABLE
        self.buckets: list[list[list]] = [[] for _ in range(self.table_size)]
        self.backing: list[int] = []
        for x in items:
            self.insert(x)

    def _bucket_of(self, x: int) -> int:
        return _splitmix64(x ^ self.hash_seed) % self.table_size

    def size(self) -> int:
        return len(self.backing)

    def contains(self, x: Element) -> bool:
        x = int(x)
        return any(entry[0] == x for entry in self.buckets[self._bucket_of(x)])

    def contains_many(self, xs: np.ndarray) -> np.ndarray:
        return np.fromiter((self.contains(int(x)) for x in xs), dtype=bool,
                           count=len(xs))

    def draw_many(self, count: int, rng) -> np.ndarray:
        idx = rng.integers(0, len(self.backing), size=count)
        backing = np.asarray(self.backing, dtype=np.uint64)
        return backing[idx]

    def elements(self) -> np.ndarray:
        return np.sort(np.asarray(self.backing, dtype=np.uint64))

    def insert(self, x: Element) -> bool:
        x = int(x)
        if self.contains(x):
            return False
        if len(self.backing) >= self.table_size:
            self._resize(self.table_size * 2)
        self.backing.append(x)
        self.buckets[self._bucket_of(x)].append([x, len(self.backing) - 1])
        return True

    def delete(self, x: Element) -> bool:
        x = int(x)
        chain = self.buckets[self._bucket_of(x)]
        for j, entry in enumerate(chain):
            if entry[0] == x:
                pos = entry[1]
                chain.pop(j)
                last = self.backing.pop()
                if pos < len(self.backing):
                    # Swap-with-last keeps draws O(1); fix the moved entry.
                    self.backing[pos] = last
                    for other in self.buckets[self._bucket_of(last)]:
                        if other[0] == last:
                            other[1] = pos
                            break
                if (self.table_size > self._MIN_TABLE
                        and len(self.backing) < self.table_size // 2):
                    self._resize(self.table_size // 2)
                return True
        return False

    def _resize(self, new_size: int) -> None:
        self.table_size = max(new_size, self._MIN_TABLE)
        self.buckets = [[] for _ in range(self.table_size)]
        for pos, x in enumerate(self.backing):
            self.buckets[self._bucket_of(x)].append([x, pos])


class LatticeRectangle:
    """Axis-aligned box of integer lattice points in d dimensions.

    Points are packed injectively into 64-bit elements: each coordinate
    gets floor(64/d) bits, biased by 2**(bits-1) so signed coordinates fit.
    """

    def __init__(self, lo, hi):
        self.lo = np.asarray(list(lo), dtype=np.int64)
        self.hi = np.asarray(list(hi), dtype=np.int64)
        if self.lo.ndim != 1 or self.lo.shape != self.hi.shape or self.lo.size == 0:
            raise ValueError("lo and hi must be equal-length nonempty vectors")
        if np.any(self.lo > self.hi):
            raise ValueError("lo[j] must not exceed hi[j]")
        self.dim = int(self.lo.size)
        self.bits = 64 // self.dim
        bound = 1 << (self.bits - 1)
        if np.any(self.lo < -bound) or np.any(self.hi > bound - 1):
            raise PackingError(
                f"coordinates must fit {self.bits} biased bits for dim={self.dim}")
        self._card = 1
        for j in range(self.dim):
            self._card *= int(self.hi[j]) - int(self.lo[j]) + 1

    def cardinality(self) -> int:
        return self._card

    def size(self) -> int:
        return self._card

    def pack(self, coords) -> np.ndarray:
        """Pack an (n, d) array of lattice points into uint64 elements."""
        coords = np.asarray(coords, dtype=np.int64)
        if coords.ndim == 1:
            coords = coords.reshape(1, -1)
        if coords.shape[1] != self.dim:
            raise ValueError(f"expected {self.dim} coordinates per point")
        off = np.uint64(1 << (self.bits - 1))
        packed = np.zeros(coords.shape[0], dtype=np.uint64)
        for j in range(self.dim):
            shift = np.uint64(self.bits * (self.dim - 1 - j))
            biased = coords[:, j].view(np.uint64) + off
            packed |= (biased & self._field_mask()) << shift
        return packed

    def unpack(self, xs: np.ndarray) -> np.ndarray:
        xs = np.ascontiguousarray(xs, dtype=np.uint64)
        off = np.uint64(1 << (self.bits - 1))
        out = np.empty((xs.size, self.dim), dtype=np.int64)
        for j in range(self.dim):
            shift = np.uint64(self.bits * (self.dim - 1 - j))
            field = (xs >> shift) & self._field_mask()
            out[:, j] = (field - off).view(np.int64)
        return out

    def _field_mask(self) -> np.uint64:
        if self.bits >= 64:
            return np.uint64(0xFFFFFFFFFFFFFFFF)
        return np.uint64((1 << self.bits) - 1)

    def draw_many(self, count: int, rng) -> np.ndarray:
        coords = np.empty((count, self.dim), dtype=np.int64)
        for j in range(self.dim):
            coords[:, j] = rng.integers(self.lo[j], self.hi[j], size=count,
                                        endpoint=True, dtype=np.int64)
        return self.pack(coords)

    def contains(self, x: Element) -> bool:
        return bool(self.contains_many(np.asarray([x], dtype=np.uint64))[0])

    def contains_many(self, xs: np.ndarray) -> np.ndarray:
        return kernels.rect_contains(self.lo, self.hi, self.bits, xs)

    def elements(self, cap: int = 10 ** 6) -> np.ndarray:
        if self._card > cap:
            raise PackingError(f"rectangle has {self._card} points, over the cap {cap}")
        grids = [range(int(self.lo[j]), int(self.hi[j]) + 1) for j in range(self.dim)]
        coords = np.asarray(list(itertools.product(*grids)), dtype=np.int64)
        return np.sort(self.pack(coords))


class SkewedBackend:
    """Deliberately biased random generator inside the (alpha_l, alpha_r)
    envelope, for exercising the biased-sampling code paths.

    A designated half of the members draws with probability (1-alpha_l)/m
    each; the remaining members split the leftover mass evenly.
    """

    def __init__(self, base, alpha_l: float, alpha_r: float):
        if not (0.0 <= alpha_l < 1.0 and 0.0 <= alpha_r < 1.0):
            raise ValueError("alpha_l and alpha_r must lie in [0, 1)")
        self.base = base
        self.alpha_l = alpha_l
        self.alpha_r = alpha_r
        items = np.sort(np.asarray(base.elements(), dtype=np.uint64))
        m = items.size
        if m == 0:
            self._items = items
            self._probs = np.zeros(0)
            return
        half = m // 2
        p_lo = (1.0 - alpha_l) / m
        probs = np.full(m, 1.0 / m)
        if half and m > half:
            p_hi = (1.0 - half * p_lo) / (m - half)
            if p_hi > (1.0 + alpha_r) / m + 1e-15:
                raise InfeasibleSkewError(
                    f"cannot realize skew (alpha_l={alpha_l}, alpha_r={alpha_r}) "
                    f"for a set of {m} members")
            probs[:half] = p_lo
            probs[half:] = p_hi
        self._items = items
        self._probs = probs

    def probabilities(self) -> np.ndarray:
        return self._probs.copy()

    def size(self) -> int:
        return self.base.size()

    def draw_many(self, count: int, rng) -> np.ndarray:
        idx = rng.choice(self._items.size, size=count, p=self._probs)
        return self._items[idx]

    def contains(self, x: Element) -> bool:
        return self.base.contains(x)

    def contains_many(self, xs: np.ndarray) -> np.ndarray:
        return self.base.contains_many(xs)

    def elements(self) -> np.ndarray:
        return self.base.elements()
