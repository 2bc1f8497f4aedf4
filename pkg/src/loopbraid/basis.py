r"""Fusion-tree bases of ``Hom(z, (x⊗y)^⊗n)`` and of generic left-nested spaces.

Paired trees first fuse each ``x ⊗ y`` pair to ``a_i`` and then fuse the
``a_i`` left to right through ``b_1 = a_1, b_2, ..., b_n = z``::

    x  y   x  y   x  y
     \/     \/     \/
     a1     a2     a3
      \_____/      |
        b2         |
         \_________/
             b3 = z

``b_0`` is taken to be the unit so that ``b_1 = a_1`` is the first step of
the same recursion. Bases are ordered lexicographically by object id.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Generic, Iterator, Sequence, TypeVar

import numpy as np

from .category import RibbonCategory


@dataclass(frozen=True, order=True)
class PairedFusionTree:
    a: tuple[int, ...]
    b: tuple[int, ...]
    x: int
    y: int
    z: int

    @property
    def n(self) -> int:
        return len(self.a)

    def b_at(self, i: int, unit: int) -> int:
        """``b_i`` with 1-based ``i`` and ``b_0`` the unit."""
        return unit if i == 0 else self.b[i - 1]

    def describe(self, cat: RibbonCategory) -> str:
        nm = cat.name_of
        return "a=(" + ",".join(nm(v) for v in self.a) + ") b=(" + ",".join(nm(v) for v in self.b) + ")"


@dataclass(frozen=True, order=True)
class LeftFusionTree:
    """Left-nested splitting tree ``((w1 w2)_{c2} w3)_{c3} ... -> z``.

    ``internal`` lists ``c_2 .. c_{m-1}``; ``path`` gives the full
    sequence ``c_1 = w1, c_2, ..., c_m = z``.
    """

    internal: tuple[int, ...]
    leaves: tuple[int, ...]
    z: int

    @property
    def path(self) -> tuple[int, ...]:
        if len(self.leaves) == 1:
            return (self.leaves[0],)
        return (self.leaves[0],) + self.internal + (self.z,)

    def describe(self, cat: RibbonCategory) -> str:
        return "c=(" + ",".join(cat.name_of(v) for v in self.path) + ")"


T = TypeVar("T")


class BasisIndex(Generic[T]):
    """Ordered basis with a tree -> row lookup."""

    def __init__(self, trees: Sequence[T]):
        self.trees = tuple(trees)
        self.position = {t: i for i, t in enumerate(self.trees)}

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self) -> Iterator[T]:
        return iter(self.trees)

    def __getitem__(self, i: int) -> T:
        return self.trees[i]

    def index(self, tree: T) -> int:
        return self.position[tree]

    def __eq__(self, other) -> bool:
        return isinstance(other, BasisIndex) and self.trees == other.trees

    def dump(self, cat: RibbonCategory) -> list[str]:
        """One line per tree, row index first, labels by name."""
        return [f"{i} {t.describe(cat)}" for i, t in enumerate(self.trees)]


def _fusion_paths(cat: RibbonCategory, start: int, steps: Sequence[int], end: int) -> list[tuple[int, ...]]:
    """All label sequences ``start -> c_1 -> ... -> c_k = end`` with ``c_j in c_{j-1} ⊗ steps[j]``."""
    out = []

    def rec(cur: int, j: int, path: list[int]):
        if j == len(steps):
            if cur == end:
                out.append(tuple(path))
            return
        for c in cat.fuse(cur, steps[j]):
            path.append(c)
            rec(c, j + 1, path)
            path.pop()

    rec(start, 0, [])
    return out


def enumerate_paired_basis(cat: RibbonCategory, x: int, y: int, z: int, n: int) -> BasisIndex[PairedFusionTree]:
    """All admissible ``(a, b)`` labellings of the paired tree, canonically ordered."""
    if n < 1:
        raise ValueError("n must be at least 1")
    trees = []
    for a in itertools.product(cat.fuse(x, y), repeat=n):
        for b in _fusion_paths(cat, cat.unit, a, z):
            trees.append(PairedFusionTree(tuple(a), b, x, y, z))
    trees.sort(key=lambda t: (t.a, t.b))
    return BasisIndex(trees)


def enumerate_left_basis(cat: RibbonCategory, leaves: Sequence[int], z: int) -> BasisIndex[LeftFusionTree]:
    """All admissible internal labellings of the left-nested tree on ``leaves``."""
    leaves = tuple(leaves)
    if not leaves:
        raise ValueError("leaves must be non-empty")
    trees = []
    for path in _fusion_paths(cat, leaves[0], leaves[1:], z):
        trees.append(LeftFusionTree(tuple(path[:-1]), leaves, z))
    trees.sort(key=lambda t: t.internal)
    return BasisIndex(trees)


def dim_hom(cat: RibbonCategory, leaves: Sequence[int], z: int) -> int:
    """``dim Hom(z, w_1 ⊗ ... ⊗ w_m)`` by iterated fusion-matrix products."""
    if not len(leaves):
        raise ValueError("leaves must be non-empty")
    n = cat.rules.n_table
    v = np.zeros(cat.num_objects, dtype=np.int64)
    v[leaves[0]] = 1
    for w in leaves[1:]:
        v = v @ n[:, w, :]
    return int(v[z])
