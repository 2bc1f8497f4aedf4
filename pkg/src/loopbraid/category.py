"""Ribbon fusion category data and coherence checks.

Objects are identified by 0-based integer ids. F-symbols are keyed by
``(a, b, c, d, e, f)`` where ``e`` is the left-nested intermediate
(``a ⊗ b → e``, ``e ⊗ c → d``) and ``f`` the right-nested one
(``b ⊗ c → f``, ``a ⊗ f → d``). A left-nested splitting tree expands as::

    |(a b)_e c; d>  =  sum_f  F(a, b, c, d, e, f) |a (b c)_f; d>

and the stored inverse table runs the other way::

    |a (b c)_f; d>  =  sum_e  Fbar(a, b, c, d, e, f) |(a b)_e c; d>

``R(a, b, c)`` is the eigenvalue of the crossing that turns the splitting
vertex ``c → (b, a)`` into ``c → (a, b)`` with the right-moving strand over.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

DEFAULT_TOL = 1e-9


class CategoryError(ValueError):
    """Malformed category data."""


class MultiplicityError(CategoryError):
    """Fusion coefficient larger than one."""


class DataIncompleteError(CategoryError):
    """An admissible F- or R-symbol is missing from the tables."""

    def __init__(self, kind: str, key: tuple):
        self.kind = kind
        self.key = key
        super().__init__(f"missing {kind}-symbol for admissible tuple {key}")


@dataclass(frozen=True)
class SimpleObject:
    id: int
    name: str


@dataclass(frozen=True, eq=False)
class FusionRules:
    """Multiplicity-free fusion rules ``N[a, b, c] = N^{ab}_c``."""

    num_objects: int
    unit: int
    dual: tuple[int, ...]
    n_table: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.n_table, dtype=int)
        k = self.num_objects
        if n.shape != (k, k, k):
            raise CategoryError(f"fusion table has shape {n.shape}, expected {(k, k, k)}")
        if (n < 0).any():
            raise CategoryError("negative fusion coefficient")
        if (n > 1).any():
            a, b, c = (int(i) for i in np.argwhere(n > 1)[0])
            raise MultiplicityError(
                f"N^{{{a}{b}}}_{c} = {n[a, b, c]}: only multiplicity-free fusion rules are supported"
            )
        n.setflags(write=False)
        object.__setattr__(self, "n_table", n)
        object.__setattr__(self, "dual", tuple(int(d) for d in self.dual))
        fuse = tuple(
            tuple(tuple(int(c) for c in np.flatnonzero(n[a, b])) for b in range(k)) for a in range(k)
        )
        object.__setattr__(self, "_fuse", fuse)

    def n(self, a: int, b: int, c: int) -> int:
        return int(self.n_table[a, b, c])

    def fuse(self, a: int, b: int) -> tuple[int, ...]:
        """Simple summands of ``a ⊗ b`` in id order."""
        return self._fuse[a][b]

    def fusion_matrix(self, a: int) -> np.ndarray:
        """``[N^{ab}_c]_{bc}``."""
        return self.n_table[a]


@dataclass(frozen=True, eq=False)
class RibbonCategory:
    """Complete algebraic input for the loop braid representations.

    ``f`` and ``r`` are sparse tables over admissible tuples; ``twist[a]``
    is the topological spin of object ``a``. The inverse F table is computed
    once per ``(a, b, c, d)`` block at construction.
    """

    name: str
    objects: tuple[SimpleObject, ...]
    rules: FusionRules
    f: Mapping[tuple, complex]
    r: Mapping[tuple, complex]
    twist: tuple[complex, ...]
    fbar: dict = field(init=False, repr=False)
    singular_blocks: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "f", {tuple(k): complex(v) for k, v in self.f.items()})
        object.__setattr__(self, "r", {tuple(k): complex(v) for k, v in self.r.items()})
        object.__setattr__(self, "twist", tuple(complex(t) for t in self.twist))
        object.__setattr__(self, "_by_name", {o.name: o.id for o in self.objects})
        fbar, bad = {}, []
        for block in self.f_blocks():
            a, b, c, d, es, fs = block
            try:
                mat = np.array([[self.f[(a, b, c, d, e, ff)] for ff in fs] for e in es])
                inv = np.linalg.inv(mat)
            except (KeyError, np.linalg.LinAlgError):
                bad.append((a, b, c, d))
                continue
            # mat[e, f] = F(e, f); Fbar(e, f) is the coefficient of left tree e in right tree f
            for i, e in enumerate(es):
                for j, ff in enumerate(fs):
                    fbar[(a, b, c, d, e, ff)] = complex(inv[j, i])
        object.__setattr__(self, "fbar", fbar)
        object.__setattr__(self, "singular_blocks", tuple(bad))

    # ---- basic queries -------------------------------------------------

    @property
    def num_objects(self) -> int:
        return self.rules.num_objects

    @property
    def unit(self) -> int:
        return self.rules.unit

    def dual(self, a: int) -> int:
        return self.rules.dual[a]

    def fuse(self, a: int, b: int) -> tuple[int, ...]:
        return self.rules.fuse(a, b)

    def n(self, a: int, b: int, c: int) -> int:
        return self.rules.n(a, b, c)

    def names(self) -> list[str]:
        return [o.name for o in self.objects]

    def name_of(self, a: int) -> str:
        return self.objects[a].name

    def id_of(self, name: str) -> int:
        """Look up an object by name; ``"vac"`` and ``"1"`` fall back to the unit."""
        if name in self._by_name:
            return self._by_name[name]
        if name in ("vac", "1"):
            return self.unit
        raise KeyError(f"unknown object {name!r} in category {self.name!r}; known: {self.names()}")

    def f_admissible(self, a, b, c, d, e, f) -> bool:
        n = self.rules.n_table
        return bool(n[a, b, e] and n[e, c, d] and n[b, c, f] and n[a, f, d])

    def f_blocks(self):
        """Yield ``(a, b, c, d, left_labels, right_labels)`` for every non-empty block."""
        k = self.num_objects
        for a, b, c, d in itertools.product(range(k), repeat=4):
            es = [e for e in self.fuse(a, b) if self.n(e, c, d)]
            if not es:
                continue
            fs = [ff for ff in self.fuse(b, c) if self.n(a, ff, d)]
            yield a, b, c, d, es, fs

    # ---- symbol lookups (zero off the admissible set) ------------------

    def F(self, a, b, c, d, e, f) -> complex:
        key = (a, b, c, d, e, f)
        v = self.f.get(key)
        if v is not None:
            return v
        if self.f_admissible(*key):
            raise DataIncompleteError("F", key)
        return 0.0

    def Fbar(self, a, b, c, d, e, f) -> complex:
        key = (a, b, c, d, e, f)
        v = self.fbar.get(key)
        if v is not None:
            return v
        if self.f_admissible(*key):
            raise DataIncompleteError("F", key)
        return 0.0

    def R(self, a, b, c) -> complex:
        v = self.r.get((a, b, c))
        if v is not None:
            return v
        if self.n(a, b, c):
            raise DataIncompleteError("R", (a, b, c))
        return 0.0

    def theta(self, a: int) -> complex:
        return self.twist[a]

    # ---- construction helpers ------------------------------------------

    @classmethod
    def from_data(
        cls,
        name: str,
        names: Iterable[str],
        unit: int,
        dual: Iterable[int],
        fusion: Iterable[tuple],
        f: Mapping[tuple, complex],
        r: Mapping[tuple, complex],
        twist: Iterable[complex],
    ) -> RibbonCategory:
        """Build a category, filling unit-leg F and R entries with 1.

        ``fusion`` holds ``(a, b, c)`` triples; a repeated triple counts as
        a multiplicity and is rejected.
        """
        names = list(names)
        k = len(names)
        if len(set(names)) != k:
            raise CategoryError(f"object names are not unique: {names}")
        n = np.zeros((k, k, k), dtype=int)
        for t in fusion:
            a, b, c = t[:3]
            n[a, b, c] += t[3] if len(t) > 3 else 1
        rules = FusionRules(k, unit, tuple(dual), n)
        f = dict(f)
        r = dict(r)
        for a, b, c, d in itertools.product(range(k), repeat=4):
            if unit not in (a, b, c):
                continue
            for e in rules.fuse(a, b):
                if not n[e, c, d]:
                    continue
                for ff in rules.fuse(b, c):
                    if n[a, ff, d]:
                        f.setdefault((a, b, c, d, e, ff), 1.0)
        for a in range(k):
            r.setdefault((unit, a, a), 1.0)
            r.setdefault((a, unit, a), 1.0)
        objects = tuple(SimpleObject(i, nm) for i, nm in enumerate(names))
        return cls(name, objects, rules, f, r, tuple(twist))

    def replace(self, **changes) -> RibbonCategory:
        """Copy with some fields swapped; the inverse F table is rebuilt."""
        kw = dict(
            name=self.name, objects=self.objects, rules=self.rules, f=self.f, r=self.r, twist=self.twist
        )
        kw.update(changes)
        return RibbonCategory(**kw)


# ---------------------------------------------------------------------------
# Reports


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    def add(self, kind: str, where: tuple, detail: str = ""):
        self.violations.append((kind, where, detail))

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v[0] for v in self.violations}

    def at(self, kind: str) -> list[tuple]:
        return [v[1] for v in self.violations if v[0] == kind]


@dataclass
class CoherenceReport:
    """Outcome of an exhaustive coherence sweep.

    ``failures`` holds ``(kind, labels, residual)`` for every instance whose
    residual exceeds ``tol``.
    """

    name: str
    tol: float
    instances: int = 0
    max_residual: float = 0.0
    failures: list = field(default_factory=list)

    def record(self, kind: str, labels: tuple, residual: float):
        self.instances += 1
        if residual > self.max_residual:
            self.max_residual = residual
        if residual > self.tol:
            self.failures.append((kind, labels, residual))

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"{self.name}: {status} ({self.instances} instances, max residual "
            f"{self.max_residual:.3e}, {len(self.failures)} over tol {self.tol:g})"
        )


# ---------------------------------------------------------------------------
# Structural validation


def validate_structure(cat: RibbonCategory, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check every structural invariant of ``cat``; violations become report entries."""
    rep = ValidationReport()
    k = cat.num_objects
    n = cat.rules.n_table
    u = cat.unit

    if [o.id for o in cat.objects] != list(range(k)):
        rep.add("object-ids", tuple(o.id for o in cat.objects), "ids must be 0..k-1")
    if len(set(cat.names())) != k:
        rep.add("object-names", tuple(cat.names()), "names must be unique")
    if not 0 <= u < k:
        rep.add("unit", (u,), "unit out of range")
        return rep
    if len(cat.rules.dual) != k:
        rep.add("dual", tuple(cat.rules.dual), "dual map has wrong length")
        return rep

    if (n > 1).any():
        for t in np.argwhere(n > 1):
            rep.add("multiplicity", tuple(int(i) for i in t))
    for a, b in itertools.product(range(k), repeat=2):
        want = int(a == b)
        if n[u, a, b] != want or n[a, u, b] != want:
            rep.add("unit-law", (a, b))
    for a in range(k):
        d = cat.dual(a)
        if not 0 <= d < k or cat.dual(d) != a:
            rep.add("dual", (a,), "dual(dual(a)) != a")
            continue
        for b in range(k):
            if bool(n[a, b, u]) != (b == d):
                rep.add("dual", (a, b), "N^{ab}_1 must be 1 exactly for b = dual(a)")
    # Σ_e N^{ab}_e N^{ec}_d  vs  Σ_f N^{bc}_f N^{af}_d
    left = np.einsum("abe,ecd->abcd", n, n)
    right = np.einsum("bcf,afd->abcd", n, n)
    for t in np.argwhere(left != right):
        rep.add("associativity", tuple(int(i) for i in t))

    for key in cat.f:
        if not cat.f_admissible(*key):
            rep.add("F-extra", key, "entry on non-admissible tuple")
    for a, b, c, d, es, fs in cat.f_blocks():
        if len(es) != len(fs):
            rep.add("F-block-shape", (a, b, c, d), f"{len(es)} left vs {len(fs)} right labels")
            continue
        missing = [(a, b, c, d, e, ff) for e in es for ff in fs if (a, b, c, d, e, ff) not in cat.f]
        for key in missing:
            rep.add("F-missing", key)
        if missing:
            continue
        if u in (a, b, c):
            for e in es:
                for ff in fs:
                    if abs(cat.f[(a, b, c, d, e, ff)] - 1) > tol:
                        rep.add("F-gauge", (a, b, c, d, e, ff), "unit-leg entry must be 1")
        if (a, b, c, d) in cat.singular_blocks:
            rep.add("F-singular", (a, b, c, d))
            continue
        mat = np.array([[cat.f[(a, b, c, d, e, ff)] for ff in fs] for e in es])
        inv = np.array([[cat.fbar[(a, b, c, d, e, ff)] for e in es] for ff in fs])
        err = np.abs(mat @ inv - np.eye(len(es))).max()
        if err > 1e-12:
            rep.add("F-inverse", (a, b, c, d), f"residual {err:.2e}")

    for key, v in cat.r.items():
        if not cat.n(*key):
            rep.add("R-extra", key, "entry on non-admissible triple")
        elif abs(v) < tol:
            rep.add("R-zero", key)
    for a, b in itertools.product(range(k), repeat=2):
        for c in cat.fuse(a, b):
            if (a, b, c) not in cat.r:
                rep.add("R-missing", (a, b, c))
            elif u in (a, b) and abs(cat.r[(a, b, c)] - 1) > tol:
                rep.add("R-gauge", (a, b, c), "unit-leg entry must be 1")

    if len(cat.twist) != k:
        rep.add("twist", (), "wrong number of twists")
    else:
        if abs(cat.twist[u] - 1) > tol:
            rep.add("twist", (u,), "twist of the unit must be 1")
        for a in range(k):
            if abs(abs(cat.twist[a]) - 1) > tol:
                rep.add("twist", (a,), "twist must have unit modulus")
    return rep


# ---------------------------------------------------------------------------
# Coherence


def verify_pentagon(cat: RibbonCategory, tol: float = DEFAULT_TOL) -> CoherenceReport:
    """Exhaustive pentagon sweep.

    For every admissible labelling of a five-leg splitting tree
    ``(a, b, c, d; e)`` with ``f = ab``, ``g = fc``, ``l = cd``, ``k = bl``::

        F(f,c,d,e,g,l) F(a,b,l,e,f,k) = sum_h F(a,b,c,g,f,h) F(a,h,d,e,g,k) F(b,c,d,k,h,l)
    """
    rep = CoherenceReport("pentagon", tol)
    k = cat.num_objects
    F = cat.F
    for a, b, c, d in itertools.product(range(k), repeat=4):
        for f in cat.fuse(a, b):
            for g in cat.fuse(f, c):
                for e in cat.fuse(g, d):
                    for l in cat.fuse(c, d):
                        for kk in cat.fuse(b, l):
                            if not cat.n(a, kk, e):
                                continue
                            lhs = F(f, c, d, e, g, l) * F(a, b, l, e, f, kk)
                            rhs = sum(
                                F(a, b, c, g, f, h) * F(a, h, d, e, g, kk) * F(b, c, d, kk, h, l)
                                for h in cat.fuse(b, c)
                            )
                            rep.record("pentagon", (a, b, c, d, e, f, g, kk, l), abs(lhs - rhs))
    return rep


def verify_hexagon(cat: RibbonCategory, tol: float = DEFAULT_TOL) -> CoherenceReport:
    """Both hexagon identities plus the ribbon identity, over all admissible labels.

    Written with ``B(a, b, c) = R(b, a, c)``, the braiding eigenvalue on the
    splitting vertex ``c -> (a, b)``, the hexagon reads::

        B(c,a,e) F(a,c,b,d,e,g) B(c,b,g) = sum_f F(c,a,b,d,e,f) B(c,f,d) F(a,b,c,d,f,g)

    and the second identity is the same with ``B(a, b, c)`` replaced by the
    inverse braiding ``1 / B(b, a, c) = 1 / R(a, b, c)``. This placement is
    the one that is covariant under vertex rescalings for the splitting-tree
    conventions of this module.

    Ribbon: ``R(a,b,c) R(b,a,c) = theta_c / (theta_a theta_b)``.
    """
    rep = CoherenceReport("hexagon", tol)
    k = cat.num_objects
    F, R = cat.F, cat.R

    def B(a, b, c):
        return R(b, a, c)

    def Binv(a, b, c):
        v = R(a, b, c)
        return 1.0 / v if v else 0.0

    for a, b, c in itertools.product(range(k), repeat=3):
        for e in cat.fuse(a, c):
            for d in cat.fuse(e, b):
                for g in cat.fuse(c, b):
                    if not cat.n(a, g, d):
                        continue
                    mid = F(a, c, b, d, e, g)
                    fs = [f for f in cat.fuse(a, b) if cat.n(c, f, d)]
                    lhs = B(c, a, e) * mid * B(c, b, g)
                    rhs = sum(F(c, a, b, d, e, f) * B(c, f, d) * F(a, b, c, d, f, g) for f in fs)
                    rep.record("hexagon", (a, b, c, d, e, g), abs(lhs - rhs))
                    lhs = Binv(c, a, e) * mid * Binv(c, b, g)
                    rhs = sum(F(c, a, b, d, e, f) * Binv(c, f, d) * F(a, b, c, d, f, g) for f in fs)
                    rep.record("hexagon-inverse", (a, b, c, d, e, g), abs(lhs - rhs))
    if len(cat.twist) == k:
        th = cat.twist
        for a, b in itertools.product(range(k), repeat=2):
            for c in cat.fuse(a, b):
                res = abs(R(a, b, c) * R(b, a, c) - th[c] / (th[a] * th[b]))
                rep.record("ribbon", (a, b, c), res)
    return rep


# ---------------------------------------------------------------------------
# Derived quantities


def quantum_dimension(cat: RibbonCategory, a: int) -> float:
    """Frobenius–Perron eigenvalue of the fusion matrix of ``a``."""
    if a == cat.unit:
        return 1.0
    ev = np.linalg.eigvals(cat.rules.fusion_matrix(a).astype(float))
    return float(ev.real.max())


def twists_from_braiding(cat_rules: FusionRules, r: Mapping[tuple, complex], dims) -> list[complex]:
    """``theta_a = sum_c (d_c / d_a) R(a, a, c)``."""
    k = cat_rules.num_objects
    return [sum(dims[c] / dims[a] * r[(a, a, c)] for c in cat_rules.fuse(a, a)) for a in range(k)]


def classify_boson_fermion(cat: RibbonCategory, z: int, tol: float = DEFAULT_TOL) -> str:
    """``'boson'``, ``'fermion'`` or ``'neither'``.

    Requires ``z ⊗ dual(z) = 1`` exactly, then reads off the twist.
    """
    if cat.fuse(z, cat.dual(z)) != (cat.unit,):
        return "neither"
    th = cat.theta(z)
    if abs(th - 1) < tol:
        return "boson"
    if abs(th + 1) < tol:
        return "fermion"
    return "neither"
