"""Pure-Python (numpy) membership kernels, mirroring _speedups."""

import numpy as np

_U64_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)


def contains_sorted(items, xs, out):
    if items.size == 0:
        out[:] = 0
        return
    pos = np.searchsorted(items, xs)
    inside = pos < items.size
    pos[~inside] = 0
    out[:] = inside & (items[pos] == xs)


def contains_linear(items, xs, out):
    out[:] = np.isin(xs, items)


def rect_contains(lo, hi, bits, xs, out):
    d = lo.shape[0]
    off = np.uint64(1) << np.uint64(bits - 1)
    if bits >= 64:
        mask = _U64_MASK
    else:
        mask = (np.uint64(1) << np.uint64(bits)) - np.uint64(1)
    inside = np.ones(xs.shape[0], dtype=bool)
    for j in range(d):
        shift = np.uint64(bits * (d - 1 - j))
        field = (xs >> shift) & mask
        # Biased encoding: wrap-around subtraction recovers the signed value.
        coord = (field - off).view(np.int64)
        inside &= (coord >= lo[j]) & (coord <= hi[j])
    out[:] = inside
