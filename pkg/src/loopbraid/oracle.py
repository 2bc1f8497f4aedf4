"""Brute-force oracle: loop generators as words in elementary ``B_2n`` crossings.

Each double-strand generator is composed from four single-strand crossings
on the left-nested basis over the leaves ``x, y, x, y, ...`` and conjugated
into the paired basis by explicit F-moves. Crossing ``tau_k^{+1}`` swaps
leaves ``k, k+1`` with the strand moving right passing over; ``tau_k^{-1}``
is its inverse.

Words (time order, strands of pairs ``i, i+1`` at positions ``2i-1 .. 2i+2``)::

    s_i     : tau_{2i}^+  tau_{2i-1}^+  tau_{2i+1}^+  tau_{2i}^+
    sigma_i : tau_{2i}^+  tau_{2i-1}^+  tau_{2i+1}^-  tau_{2i}^-

In ``sigma_i`` the incoming ``x`` strand passes under the left pair and the
incoming ``y`` strand passes over it; in ``s_i`` both pass under.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .basis import LeftFusionTree, enumerate_left_basis, enumerate_paired_basis
from .category import DEFAULT_TOL, RibbonCategory
from .words import S, SIGMA


@dataclass(frozen=True)
class ElementaryCrossing:
    position: int  # strands k, k+1 (1-based)
    sign: int  # +1 or -1


# offsets relative to 2i - 2
CROSSING_WORDS = {
    S: (ElementaryCrossing(2, 1), ElementaryCrossing(1, 1), ElementaryCrossing(3, 1), ElementaryCrossing(2, 1)),
    SIGMA: (ElementaryCrossing(2, 1), ElementaryCrossing(1, 1), ElementaryCrossing(3, -1), ElementaryCrossing(2, -1)),
}


def swapped(leaves: Sequence[int], k: int) -> tuple[int, ...]:
    out = list(leaves)
    out[k - 1], out[k] = out[k], out[k - 1]
    return tuple(out)


def elementary_braid_matrix(
    cat: RibbonCategory, leaves: Sequence[int], z: int, k: int, sign: int
) -> np.ndarray:
    """Crossing of leaves ``k, k+1`` as a map from the left basis on ``leaves``
    to the left basis on ``swapped(leaves, k)``.
    """
    leaves = tuple(leaves)
    if not 1 <= k < len(leaves):
        raise IndexError(f"crossing position {k} out of range for {len(leaves)} leaves")
    out_leaves = swapped(leaves, k)
    src = enumerate_left_basis(cat, leaves, z)
    dst = enumerate_left_basis(cat, out_leaves, z)
    mat = np.zeros((len(dst), len(src)), dtype=complex)
    u = cat.unit
    w1, w2 = leaves[k - 1], leaves[k]
    for col, t in enumerate(src):
        path = t.path
        before = u if k == 1 else path[k - 2]
        here = path[k - 1]
        after = path[k]
        for f in cat.fuse(w1, w2):
            coef = cat.F(before, w1, w2, after, here, f)
            if coef == 0:
                continue
            coef *= cat.R(w2, w1, f) if sign > 0 else 1.0 / cat.R(w1, w2, f)
            for new in cat.fuse(before, w2):
                back = cat.Fbar(before, w2, w1, after, new, f)
                if back == 0:
                    continue
                new_path = list(path)
                new_path[k - 1] = new
                row = dst.index(LeftFusionTree(tuple(new_path[1:-1]), out_leaves, z))
                mat[row, col] += coef * back
    return mat


def paired_to_left_change(cat: RibbonCategory, x: int, y: int, z: int, n: int) -> np.ndarray:
    """Columns: paired basis; rows: left basis over ``[x, y] * n``.

    Each pair node ``b_{i-1} ⊗ (x ⊗ y)_{a_i} -> b_i`` is re-associated to
    ``(b_{i-1} ⊗ x)_{e_i} ⊗ y -> b_i`` by one F-move. The layers act on
    disjoint vertices and are applied from pair ``n`` down to pair 1.
    """
    leaves = (x, y) * n
    paired = enumerate_paired_basis(cat, x, y, z, n)
    left = enumerate_left_basis(cat, leaves, z)
    if len(paired) != len(left):
        raise AssertionError(f"basis size mismatch: {len(paired)} paired vs {len(left)} left")
    u = cat.unit
    mat = np.zeros((len(left), len(paired)), dtype=complex)
    for col, t in enumerate(paired):
        # state per pair: ('pair', a_i) or ('split', e_i)
        vec = {tuple(("pair", a) for a in t.a): 1.0 + 0j}
        for i in range(n, 0, -1):
            bm, bi = t.b_at(i - 1, u), t.b_at(i, u)
            nxt = {}
            for state, amp in vec.items():
                a_i = state[i - 1][1]
                for e in cat.fuse(bm, x):
                    v = cat.Fbar(bm, x, y, bi, e, a_i)
                    if v == 0:
                        continue
                    new = state[: i - 1] + (("split", e),) + state[i:]
                    nxt[new] = nxt.get(new, 0) + amp * v
            vec = nxt
        for state, amp in vec.items():
            path = []
            for i, (_, e) in enumerate(state, start=1):
                path += [e, t.b_at(i, u)]
            # path = c_1 .. c_{2n}; c_1 = x by the unit-leg gauge
            mat[left.index(LeftFusionTree(tuple(path[1:-1]), leaves, z)), col] += amp
    return mat


def oracle_generator_matrix(
    cat: RibbonCategory, x: int, y: int, z: int, n: int, generator: str, index: int
) -> np.ndarray:
    """Loop generator from its four-crossing word, in the paired basis."""
    if not 1 <= index <= n - 1:
        raise IndexError(f"generator index {index} out of range 1..{n - 1}")
    leaves = (x, y) * n
    dim = len(enumerate_left_basis(cat, leaves, z))
    acc = np.eye(dim, dtype=complex)
    for crossing in CROSSING_WORDS[generator]:
        k = 2 * index - 2 + crossing.position
        acc = elementary_braid_matrix(cat, leaves, z, k, crossing.sign) @ acc
        leaves = swapped(leaves, k)
    change = paired_to_left_change(cat, x, y, z, n)
    if dim == 0:
        return acc
    return np.linalg.solve(change, acc @ change)


@dataclass
class EquivalenceReport:
    tol: float
    residuals: dict = field(default_factory=dict)  # (kind, index) -> max |closed - oracle|

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tol

    def lines(self) -> list[str]:
        return [
            f"{'x' if kind == SIGMA else 's'}{i}: |closed form - oracle| = {r:.3e}"
            for (kind, i), r in sorted(self.residuals.items())
        ]


def oracle_equivalence(
    cat: RibbonCategory, x: int, y: int, z: int, n: int, tol: float = DEFAULT_TOL
) -> EquivalenceReport:
    """Compare the closed-form generators against the crossing compositions."""
    from .rep import s_tilde_matrix, sigma_tilde_matrix

    report = EquivalenceReport(tol)
    builders = {SIGMA: sigma_tilde_matrix, S: s_tilde_matrix}
    for kind, build in builders.items():
        for i in range(1, n):
            closed = build(cat, x, y, z, n, i)
            oracle = oracle_generator_matrix(cat, x, y, z, n, kind, i)
            report.residuals[(kind, i)] = float(np.abs(closed - oracle).max()) if closed.size else 0.0
    return report
