"""Line-oriented instance files and their mapping onto backend sets.

Format (version 1):

    maxcover-instance v1
    k 3
    bias 0.0 0.0 0.0 0.0
    seed 42
    set explicit 1 2 3
    set rectangle 2 0 0 5 7

Rectangle lines carry the dimension, then the d low corners, then the d
high corners. parse(emit(f)) round-trips exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from maxcover.backends import (
    BucketHashSet,
    CountedBTree,
    LatticeRectangle,
    SortedArraySet,
    UnsortedArraySet,
)
from maxcover.oracle import BiasProfile, CoverageInstance

FORMAT_VERSION = 1


class InstanceParseError(ValueError):
    pass


@dataclass(frozen=True)
class SetSpec:
    kind: str  # "explicit" | "rectangle"
    elements: tuple[int, ...] = ()
    dim: int = 0
    lo: tuple[int, ...] = ()
    hi: tuple[int, ...] = ()

    @classmethod
    def explicit(cls, elements) -> "SetSpec":
        elements = tuple(int(x) for x in elements)
        if len(set(elements)) != len(elements):
            raise InstanceParseError("explicit sets must be duplicate-free")
        return cls(kind="explicit", elements=elements)

    @classmethod
    def rectangle(cls, lo, hi) -> "SetSpec":
        lo = tuple(int(x) for x in lo)
        hi = tuple(int(x) for x in hi)
        if len(lo) != len(hi) or not lo:
            raise InstanceParseError("rectangle needs equal-length lo/hi")
        return cls(kind="rectangle", dim=len(lo), lo=lo, hi=hi)


@dataclass(frozen=True)
class InstanceFile:
    k: int
    sets: tuple[SetSpec, ...]
    bias: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    seed: int = 0
    version: int = FORMAT_VERSION

    def emit(self) -> str:
        lines = [f"maxcover-instance v{self.version}",
                 f"k {self.k}",
                 "bias " + " ".join(repr(float(b)) for b in self.bias),
                 f"seed {self.seed}"]
        for spec in self.sets:
            if spec.kind == "explicit":
                lines.append("set explicit " + " ".join(str(x) for x in spec.elements))
            else:
                coords = " ".join(str(x) for x in (*spec.lo, *spec.hi))
                lines.append(f"set rectangle {spec.dim} {coords}")
        return "\n".join(lines) + "\n"

    def bias_profile(self) -> BiasProfile:
        return BiasProfile(*self.bias)


def parse(text: str) -> InstanceFile:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("maxcover-instance v"):
        raise InstanceParseError("missing maxcover-instance header")
    try:
        version = int(lines[0].rsplit("v", 1)[1])
    except ValueError as exc:
        raise InstanceParseError("bad version in header") from exc
    if version != FORMAT_VERSION:
        raise InstanceParseError(f"unsupported format version {version}")

    k = None
    bias = (0.0, 0.0, 0.0, 0.0)
    seed = 0
    sets: list[SetSpec] = []
    for line in lines[1:]:
        tokens = line.split()
        key = tokens[0]
        try:
            if key == "k":
                k = int(tokens[1])
            elif key == "bias":
                if len(tokens) != 5:
                    raise InstanceParseError("bias needs four values")
                bias = tuple(float(t) for t in tokens[1:5])
            elif key == "seed":
                seed = int(tokens[1])
            elif key == "set":
                kind = tokens[1]
                if kind == "explicit":
                    sets.append(SetSpec.explicit(int(t) for t in tokens[2:]))
                elif kind == "rectangle":
                    dim = int(tokens[2])
                    coords = [int(t) for t in tokens[3:]]
                    if len(coords) != 2 * dim:
                        raise InstanceParseError(
                            f"rectangle with dim {dim} needs {2 * dim} coordinates")
                    sets.append(SetSpec.rectangle(coords[:dim], coords[dim:]))
                else:
                    raise InstanceParseError(f"unknown set kind {kind!r}")
            else:
                raise InstanceParseError(f"unknown directive {key!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, InstanceParseError):
                raise
            raise InstanceParseError(f"bad line: {line!r}") from exc
    if k is None:
        raise InstanceParseError("missing k")
    if not sets:
        raise InstanceParseError("instance has no sets")
    return InstanceFile(k=k, sets=tuple(sets), bias=bias, seed=seed, version=version)


def load(path) -> InstanceFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def save(instfile: InstanceFile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(instfile.emit())


BACKEND_KINDS = ("sorted", "unsorted", "btree", "hash", "rect")


def build_backend(spec: SetSpec, kind: str):
    if spec.kind == "rectangle":
        return LatticeRectangle(spec.lo, spec.hi)
    if kind == "sorted":
        return SortedArraySet(spec.elements)
    if kind == "unsorted":
        return UnsortedArraySet(spec.elements)
    if kind == "btree":
        return CountedBTree(spec.elements)
    if kind == "hash":
        return BucketHashSet(spec.elements)
    if kind == "rect":
        raise ValueError("the rect backend only applies to rectangle sets")
    raise ValueError(f"unknown backend kind {kind!r}")


def build_instance(instfile: InstanceFile, backend_kind: str = "sorted",
                   rng=None) -> CoverageInstance:
    if backend_kind not in BACKEND_KINDS:
        raise ValueError(f"backend must be one of {BACKEND_KINDS}")
    bias = instfile.bias_profile()
    if rng is None and not bias.is_zero():
        rng = np.random.default_rng(instfile.seed)
    backends = [build_backend(spec, backend_kind) for spec in instfile.sets]
    return CoverageInstance.from_backends(backends, instfile.k, bias=bias, rng=rng)


def materialize(instfile: InstanceFile, cap: int = 10 ** 6) -> list[frozenset]:
    """Exact element sets of the file, for the exact baselines."""
    sets = []
    for spec in instfile.sets:
        if spec.kind == "explicit":
            sets.append(frozenset(spec.elements))
        else:
            rect = LatticeRectangle(spec.lo, spec.hi)
            sets.append(frozenset(int(x) for x in rect.elements(cap=cap)))
    return sets
