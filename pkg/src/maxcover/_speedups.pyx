# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled membership kernels for the sampling hot loops."""

from libc.stdint cimport int64_t, uint8_t, uint64_t


cdef inline Py_ssize_t _lower_bound(const uint64_t[::1] items, uint64_t x) nogil:
    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t hi = items.shape[0]
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if items[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def contains_sorted(const uint64_t[::1] items, const uint64_t[::1] xs,
                    uint8_t[::1] out):
    """out[i] = 1 iff xs[i] is in the strictly sorted array `items`."""
    cdef Py_ssize_t i, pos
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t m = items.shape[0]
    with nogil:
        for i in range(n):
            pos = _lower_bound(items, xs[i])
            out[i] = 1 if (pos < m and items[pos] == xs[i]) else 0


def contains_linear(const uint64_t[::1] items, const uint64_t[::1] xs,
                    uint8_t[::1] out):
    """out[i] = 1 iff xs[i] is in the (unsorted) array `items`."""
    cdef Py_ssize_t i, j
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t m = items.shape[0]
    cdef uint64_t x
    cdef uint8_t hit
    with nogil:
        for i in range(n):
            x = xs[i]
            hit = 0
            for j in range(m):
                if items[j] == x:
                    hit = 1
                    break
            out[i] = hit


def rect_contains(const int64_t[::1] lo, const int64_t[::1] hi, int bits,
                  const uint64_t[::1] xs, uint8_t[::1] out):
    """Membership of packed lattice points in an axis-aligned box.

    Each of the `d = len(lo)` coordinates occupies `bits` bits, biased by
    2**(bits-1); coordinate j sits at shift bits*(d-1-j).
    """
    cdef Py_ssize_t i, j
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t d = lo.shape[0]
    cdef uint64_t mask
    cdef uint64_t off = (<uint64_t>1) << (bits - 1)
    cdef uint64_t x, field
    cdef int64_t c
    cdef int shift
    cdef uint8_t inside
    if bits >= 64:
        mask = <uint64_t>0xFFFFFFFFFFFFFFFF
    else:
        mask = ((<uint64_t>1) << bits) - 1
    with nogil:
        for i in range(n):
            x = xs[i]
            inside = 1
            for j in range(d):
                shift = bits * <int>(d - 1 - j)
                field = (x >> shift) & mask
                c = <int64_t>(field - off)
                if c < lo[j] or c > hi[j]:
                    inside = 0
                    break
            out[i] = inside
