"""Kernel dispatch: compiled extension when available, numpy fallback otherwise.

Set MAXCOVER_NO_SPEEDUPS=1 to force the fallback implementation.
"""

import os

import numpy as np

if os.environ.get("MAXCOVER_NO_SPEEDUPS"):
    from maxcover import _fallback as _impl
else:
    try:
        from maxcover import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from maxcover import _fallback as _impl

IMPLEMENTATION = _impl.__name__.rsplit(".", 1)[-1].lstrip("_")


def as_u64(values) -> np.ndarray:
    return np.ascontiguousarray(values, dtype=np.uint64)


def contains_sorted(items: np.ndarray, xs: np.ndarray) -> np.ndarray:
    out = np.empty(len(xs), dtype=np.uint8)
    _impl.contains_sorted(as_u64(items), as_u64(xs), out)
    return out.view(bool)


def contains_linear(items: np.ndarray, xs: np.ndarray) -> np.ndarray:
    out = np.empty(len(xs), dtype=np.uint8)
    _impl.contains_linear(as_u64(items), as_u64(xs), out)
    return out.view(bool)


def rect_contains(lo: np.ndarray, hi: np.ndarray, bits: int, xs: np.ndarray) -> np.ndarray:
    out = np.empty(len(xs), dtype=np.uint8)
    _impl.rect_contains(
        np.ascontiguousarray(lo, dtype=np.int64),
        np.ascontiguousarray(hi, dtype=np.int64),
        int(bits),
        as_u64(xs),
        out,
    )
    return out.view(bool)


def implementations():
    """Both kernel modules, for the comparison benchmark."""
    from maxcover import _fallback

    impls = {"fallback": _fallback}
    try:
        from maxcover import _speedups  # type: ignore[attr-defined]

        impls["speedups"] = _speedups
    except ImportError:
        pass
    return impls
