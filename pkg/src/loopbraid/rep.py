"""Loop braid group representations on ``Hom(z, (x⊗y)^⊗n)``.

The exchange generator ``s_j`` swaps the ``j``-th and ``(j+1)``-th pair as
a whole, the left pair passing over. The pass-through generator
``sigma_i`` moves the ``(i+1)``-th pair to the left with its ``x`` strand
passing under the ``i``-th pair and its ``y`` strand passing over.

Matrices act on column vectors of basis coefficients; entry
``[row, col]`` is the coefficient of output tree ``row`` in the image of
input tree ``col``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import BasisIndex, PairedFusionTree, enumerate_paired_basis
from .category import DEFAULT_TOL, RibbonCategory, classify_boson_fermion
from .words import RELATION_NAMES, S, SIGMA, evaluate, relation_instances


def _check_index(n: int, i: int) -> None:
    if not 1 <= i <= n - 1:
        raise IndexError(f"generator index {i} out of range 1..{n - 1}")


def _replace(t: PairedFusionTree, i: int, a_i: int, a_next: int, b_i: int) -> PairedFusionTree:
    a = list(t.a)
    b = list(t.b)
    a[i - 1], a[i] = a_i, a_next
    b[i - 1] = b_i
    return PairedFusionTree(tuple(a), tuple(b), t.x, t.y, t.z)


def s_tilde_matrix(
    cat: RibbonCategory, x: int, y: int, z: int, n: int, j: int, basis: BasisIndex | None = None
) -> np.ndarray:
    """Exchange of pairs ``j`` and ``j+1``.

    ``(a_j, a_{j+1}, b_j) -> (a_{j+1}, a_j, b'_j)`` with coefficient
    ``sum_c F(b_{j-1}, a_j, a_{j+1}, b_{j+1}, b_j, c) R(a_{j+1}, a_j, c)
    Fbar(b_{j-1}, a_{j+1}, a_j, b_{j+1}, b'_j, c)``.
    """
    _check_index(n, j)
    basis = basis if basis is not None else enumerate_paired_basis(cat, x, y, z, n)
    mat = np.zeros((len(basis), len(basis)), dtype=complex)
    for col, t in enumerate(basis):
        bm, bj, bp = t.b_at(j - 1, cat.unit), t.b_at(j, cat.unit), t.b_at(j + 1, cat.unit)
        aj, ak = t.a[j - 1], t.a[j]
        for c in cat.fuse(aj, ak):
            coef = cat.F(bm, aj, ak, bp, bj, c)
            if coef == 0:
                continue
            coef *= cat.R(ak, aj, c)
            for b_new in cat.fuse(bm, ak):
                back = cat.Fbar(bm, ak, aj, bp, b_new, c)
                if back == 0:
                    continue
                row = basis.index(_replace(t, j, ak, aj, b_new))
                mat[row, col] += coef * back
    return mat


def _r_bar(cat: RibbonCategory, a: int, b: int, c: int) -> complex:
    """Inverse-braiding symbol producing the vertex ``c -> (a, b)``: ``1 / R(b, a, c)``."""
    return 1.0 / cat.R(b, a, c)


def sigma_tilde_matrix(
    cat: RibbonCategory, x: int, y: int, z: int, n: int, i: int, basis: BasisIndex | None = None
) -> np.ndarray:
    """Pass-through of pair ``i+1`` through pair ``i``.

    ``(a_i, a_{i+1}, b_i) -> (a'_i, a_i, b'_i)`` with coefficient
    ``sum_{c,k,b,p} eta(c, k, b, p, b'_i, a'_i)`` where ``eta`` is the
    product of eight moves: split ``a_{i+1}`` into ``x, y`` (Fbar), slide
    ``x`` under ``a_i`` (F, R, Fbar), slide ``y`` over ``a_i``
    (F, inverse R, Fbar) and refuse ``x, y`` into ``a'_i`` (F).
    """
    _check_index(n, i)
    basis = basis if basis is not None else enumerate_paired_basis(cat, x, y, z, n)
    F, Fbar, R = cat.F, cat.Fbar, cat.R
    mat = np.zeros((len(basis), len(basis)), dtype=complex)
    for col, t in enumerate(basis):
        bm, bi, bp = t.b_at(i - 1, cat.unit), t.b_at(i, cat.unit), t.b_at(i + 1, cat.unit)
        ai, an = t.a[i - 1], t.a[i]
        for c in cat.fuse(bi, x):
            v1 = Fbar(bi, x, y, bp, c, an)
            if v1 == 0:
                continue
            for k in cat.fuse(ai, x):
                v2 = v1 * F(bm, ai, x, c, bi, k)
                if v2 == 0:
                    continue
                v2 *= R(x, ai, k)
                for b in cat.fuse(bm, x):
                    v3 = v2 * Fbar(bm, x, ai, c, b, k)
                    if v3 == 0:
                        continue
                    for p in cat.fuse(ai, y):
                        v4 = v3 * F(b, ai, y, bp, c, p)
                        if v4 == 0:
                            continue
                        v4 *= _r_bar(cat, y, ai, p)
                        for b_new in cat.fuse(b, y):
                            v5 = v4 * Fbar(b, y, ai, bp, b_new, p)
                            if v5 == 0:
                                continue
                            for a_new in cat.fuse(x, y):
                                v6 = v5 * F(bm, x, y, b_new, b, a_new)
                                if v6 == 0:
                                    continue
                                row = basis.index(_replace(t, i, a_new, ai, b_new))
                                mat[row, col] += v6
    return mat


# ---------------------------------------------------------------------------
# Symmetric (trivial double braiding) condition


@dataclass
class DoubleBraidingVerdict:
    trivial: bool
    residuals: dict  # w -> max |s1^2 - 1| on Hom(w, (x⊗y)^⊗2)
    witness: tuple | None  # (w, residual) of the worst failure
    summands: dict  # summand of x⊗y -> 'boson' | 'fermion' | 'neither'

    @property
    def sufficient(self) -> bool:
        """Every summand of ``x ⊗ y`` is a boson or a fermion."""
        return all(v != "neither" for v in self.summands.values())


def check_trivial_double_braiding(
    cat: RibbonCategory, x: int, y: int, tol: float = DEFAULT_TOL
) -> DoubleBraidingVerdict:
    residuals = {}
    for w in range(cat.num_objects):
        basis = enumerate_paired_basis(cat, x, y, w, 2)
        if not len(basis):
            continue
        s1 = s_tilde_matrix(cat, x, y, w, 2, 1, basis)
        residuals[w] = float(np.abs(s1 @ s1 - np.eye(len(basis))).max())
    worst = max(residuals.items(), key=lambda kv: kv[1], default=None)
    trivial = all(r <= tol for r in residuals.values())
    summands = {c: classify_boson_fermion(cat, c, tol) for c in cat.fuse(x, y)}
    return DoubleBraidingVerdict(trivial, residuals, None if trivial else worst, summands)


# ---------------------------------------------------------------------------
# Representation


@dataclass(frozen=True, eq=False)
class LBRep:
    cat: RibbonCategory
    x: int
    y: int
    z: int
    n: int
    basis: BasisIndex
    sigma: tuple  # sigma[i-1] is the matrix of sigma_i
    s: tuple
    symmetric: bool
    sigma_inv: tuple = field(repr=False)
    s_inv: tuple = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def generator(self, kind: str, index: int, exponent: int = 1) -> np.ndarray:
        _check_index(self.n, index)
        if kind == SIGMA:
            return self.sigma[index - 1] if exponent > 0 else self.sigma_inv[index - 1]
        if kind == S:
            return self.s[index - 1] if exponent > 0 else self.s_inv[index - 1]
        raise ValueError(f"unknown generator kind {kind!r}")


def build_lb_representation(
    cat: RibbonCategory, x: int, y: int, z: int, n: int, tol: float = DEFAULT_TOL
) -> LBRep:
    """Assemble all generator matrices; the symmetric flag is recorded, not enforced."""
    if n < 1:
        raise ValueError("n must be at least 1")
    basis = enumerate_paired_basis(cat, x, y, z, n)
    sigma = tuple(sigma_tilde_matrix(cat, x, y, z, n, i, basis) for i in range(1, n))
    s = tuple(s_tilde_matrix(cat, x, y, z, n, j, basis) for j in range(1, n))
    symmetric = check_trivial_double_braiding(cat, x, y, tol).trivial
    sigma_inv = tuple(np.linalg.inv(m) for m in sigma)
    s_inv = s if symmetric else tuple(np.linalg.inv(m) for m in s)
    return LBRep(cat, x, y, z, n, basis, sigma, s, symmetric, sigma_inv, s_inv)


@dataclass
class RelationReport:
    tol: float
    instances: dict = field(default_factory=dict)  # relation -> [(indices, residual)]

    def max_residual(self, name: str) -> float:
        return max((r for _, r in self.instances.get(name, [])), default=0.0)

    def relation_passed(self, name: str) -> bool:
        return self.max_residual(name) < self.tol

    @property
    def passed(self) -> bool:
        return all(self.relation_passed(name) for name in self.instances)

    def failures(self) -> list[tuple[str, tuple, float]]:
        return [(name, idx, r) for name, inst in self.instances.items() for idx, r in inst if r >= self.tol]

    def lines(self) -> list[str]:
        out = []
        for name in self.instances:
            count = len(self.instances[name])
            status = "pass" if self.relation_passed(name) else "FAIL"
            out.append(f"{name:7s} {status}  instances={count:3d}  max residual={self.max_residual(name):.3e}")
        return out


def verify_lb_relations(rep: LBRep, tol: float = DEFAULT_TOL, names=RELATION_NAMES) -> RelationReport:
    """Check every instance of the defining relations and the Lemma 1 identity (entrywise max-norm)."""
    report = RelationReport(tol)
    table = relation_instances(rep.n)
    for name in names:
        report.instances[name] = []
        for idx, lhs, rhs in table[name]:
            if rep.dim == 0:
                res = 0.0
            else:
                res = float(np.abs(evaluate(rep, lhs) - evaluate(rep, rhs)).max())
            report.instances[name].append((idx, res))
    return report
