"""Built-in categories: trivial, Ising, and braided Tambara–Yamagami over (Z_2)^k.

Every constructor certifies its output with :func:`validate_structure`,
:func:`verify_pentagon` and :func:`verify_hexagon` before returning it.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .category import (
    CategoryError,
    RibbonCategory,
    twists_from_braiding,
    validate_structure,
    verify_hexagon,
    verify_pentagon,
)

CERTIFY_TOL = 1e-9


class CertificationError(CategoryError):
    """A built-in construction failed its own coherence checks."""


def _problems(cat: RibbonCategory) -> list[str]:
    out = []
    structure = validate_structure(cat, CERTIFY_TOL)
    if not structure.ok:
        out.append(f"structure: {structure.violations[:5]}")
        return out
    for check in (verify_pentagon, verify_hexagon):
        rep = check(cat, CERTIFY_TOL)
        if not rep.passed:
            out.append(f"{rep.summary()}; first failures {rep.failures[:3]}")
    return out


def _certify(cat: RibbonCategory) -> RibbonCategory:
    problems = _problems(cat)
    if problems:
        raise CertificationError(f"{cat.name} failed certification: " + " | ".join(problems))
    return cat


def _with_unit_entries(cat: RibbonCategory, f_special: dict) -> RibbonCategory:
    """Set every admissible F entry not in ``f_special`` to 1."""
    f = {}
    for a, b, c, d, es, fs in cat.f_blocks():
        for e in es:
            for ff in fs:
                key = (a, b, c, d, e, ff)
                f[key] = f_special.get(key, 1.0)
    return cat.replace(f=f)


def trivial() -> RibbonCategory:
    """One object, every table equal to 1."""
    cat = RibbonCategory.from_data("trivial", ["vac"], 0, [0], [(0, 0, 0)], {}, {}, [1.0])
    return _certify(cat)


def ising() -> RibbonCategory:
    """Ising category with objects ``vac``, ``sigma``, ``psi`` (ids 0, 1, 2).

    Twists ``1, exp(2 pi i/16), -1``. F and R are the standard unitary
    solution; the only non-trivial F-symbols are the Hadamard block
    ``F^{sss}_s`` and the two ``-1`` entries ``F^{psp}_s``, ``F^{sps}_p``.
    """
    one, s, p = 0, 1, 2
    fusion = [(one, a, a) for a in range(3)] + [(a, one, a) for a in (s, p)]
    fusion += [(s, s, one), (s, s, p), (p, p, one), (s, p, s), (p, s, s)]
    h = 1 / math.sqrt(2)
    f_special = {
        (s, s, s, s, one, one): h,
        (s, s, s, s, one, p): h,
        (s, s, s, s, p, one): h,
        (s, s, s, s, p, p): -h,
        (p, s, p, s, s, s): -1.0,
        (s, p, s, p, s, s): -1.0,
    }
    r = {
        (s, s, one): cmath.exp(-1j * math.pi / 8),
        (s, s, p): cmath.exp(3j * math.pi / 8),
        (s, p, s): -1j,
        (p, s, s): -1j,
        (p, p, one): -1.0,
    }
    twist = [1.0, cmath.exp(2j * math.pi / 16), -1.0]
    cat = RibbonCategory.from_data("ising", ["vac", "sigma", "psi"], one, [one, s, p], fusion, {}, r, twist)
    return _certify(_with_unit_entries(cat, f_special))


# ---------------------------------------------------------------------------
# Tambara–Yamagami


def dot_bicharacter(k: int) -> tuple[tuple[int, ...], ...]:
    """``chi(g, h) = (-1)^{g . h}`` on bit-vectors of length ``k``."""
    size = 2**k
    return tuple(tuple(-1 if bin(g & h).count("1") % 2 else 1 for h in range(size)) for g in range(size))


@dataclass(frozen=True)
class TYParams:
    """Parameters of a braided TY category over ``G = (Z_2)^k``.

    ``bicharacter[g][h]`` is ``chi(g, h)`` with group elements encoded as
    bit-masks; ``None`` means the dot-product pairing. ``sign`` fixes
    ``F^{mmm}_m = sign/sqrt|G| * chi``. ``root_signs`` (one entry per
    generator ``e_i``, ``+1`` or ``-1``) and ``alpha_sign`` pick the
    braiding; left as ``None`` the first certified choice is taken.
    """

    k: int = 1
    bicharacter: Optional[tuple[tuple[int, ...], ...]] = None
    sign: int = 1
    root_signs: Optional[tuple[int, ...]] = None
    alpha_sign: Optional[int] = None

    @property
    def order(self) -> int:
        return 2**self.k

    def chi(self) -> tuple[tuple[int, ...], ...]:
        return self.bicharacter if self.bicharacter is not None else dot_bicharacter(self.k)

    def check(self) -> None:
        if self.k < 0:
            raise CategoryError("k must be non-negative")
        if self.sign not in (1, -1):
            raise CategoryError("sign must be +1 or -1")
        G = self.order
        chi = self.chi()
        if len(chi) != G or any(len(row) != G for row in chi):
            raise CategoryError(f"bicharacter must be a {G}x{G} table")
        for g, h in itertools.product(range(G), repeat=2):
            if chi[g][h] not in (1, -1):
                raise CategoryError(f"chi({g},{h}) = {chi[g][h]} is not +-1")
            if chi[g][h] != chi[h][g]:
                raise CategoryError(f"bicharacter not symmetric at ({g},{h})")
            for l in range(G):
                if chi[g ^ h][l] != chi[g][l] * chi[h][l]:
                    raise CategoryError(f"bicharacter not multiplicative at ({g},{h},{l})")
        for g in range(1, G):
            if all(chi[g][h] == 1 for h in range(G)):
                raise CategoryError(f"bicharacter is degenerate: {g} pairs trivially with everything")
        if self.root_signs is not None and (
            len(self.root_signs) != self.k or any(s not in (1, -1) for s in self.root_signs)
        ):
            raise CategoryError(f"root_signs must be {self.k} entries of +-1")
        if self.alpha_sign not in (None, 1, -1):
            raise CategoryError("alpha_sign must be +1 or -1")


def group_name(g: int, k: int) -> str:
    return format(g, f"0{k}b") if k else "e"


def _ty_quadratic(chi, k: int, root_signs: Sequence[int]) -> list[complex]:
    """Extend ``q(e_i) = root_sign * sqrt(chi(e_i, e_i))`` via ``q(gh) = q(g) q(h) chi(g, h)``."""
    G = 2**k
    q = [1.0 + 0j] * G
    base = [sgn * cmath.sqrt(chi[1 << i][1 << i]) for i, sgn in enumerate(root_signs)]
    for g in range(1, G):
        val, acc = 1.0 + 0j, 0
        for i in range(k):
            if g >> i & 1:
                val = val * base[i] * chi[acc][1 << i]
                acc |= 1 << i
        q[g] = val
    return q


def tambara_yamagami(p: TYParams = TYParams()) -> RibbonCategory:
    """Braided TY category over ``(Z_2)^k``.

    Objects are the group elements (bit-string names, unit ``0…0``) followed
    by ``m``. Non-trivial F-symbols::

        F^{g m h}_m = F^{m g m}_h = chi(g, h),   F^{mmm}_m[g, h] = sign/sqrt|G| chi(g, h)

    The braiding is found by running through the solutions of the hexagon
    equations with ``R^{gh} = chi(g, h)``, ``R^{gm}_m = R^{mg}_m = q(g)``
    and ``R^{mm}_g = alpha / q(g)``, where ``q`` is a quadratic refinement
    of ``chi`` and ``alpha^2 = tau * sum_g q(g)``. The first candidate
    (or the one pinned by ``root_signs``/``alpha_sign``) that passes the
    full hexagon sweep is returned; twists follow from the braiding.
    """
    p.check()
    k, G, chi = p.k, p.order, p.chi()
    m = G
    names = [group_name(g, k) for g in range(G)] + ["m"]
    fusion = []
    for g in range(G):
        for h in range(G):
            fusion.append((g, h, g ^ h))
        fusion += [(g, m, m), (m, g, m), (m, m, g)]
    dual = list(range(G)) + [m]
    tau = p.sign / math.sqrt(G)
    f_special = {}
    for g in range(G):
        for h in range(G):
            f_special[(g, m, h, m, m, m)] = chi[g][h]
            f_special[(m, g, m, h, m, m)] = chi[g][h]
            f_special[(m, m, m, m, g, h)] = tau * chi[g][h]
    name = f"TY(Z2^{k})" + ("" if p.sign == 1 else "[-]")
    base = RibbonCategory.from_data(name, names, 0, dual, fusion, {}, {}, [1.0] * (G + 1))
    base = _with_unit_entries(base, f_special)
    dims = [1.0] * G + [math.sqrt(G)]

    root_choices = [p.root_signs] if p.root_signs else list(itertools.product((1, -1), repeat=k))
    alpha_choices = [p.alpha_sign] if p.alpha_sign else [1, -1]
    tried = []
    for roots in root_choices:
        q = _ty_quadratic(chi, k, roots)
        alpha0 = cmath.sqrt(tau * sum(q))
        for asg in alpha_choices:
            alpha = asg * alpha0
            r = {}
            for g in range(G):
                for h in range(G):
                    r[(g, h, g ^ h)] = complex(chi[g][h])
                r[(g, m, m)] = q[g]
                r[(m, g, m)] = q[g]
                r[(m, m, g)] = alpha / q[g]
            twist = twists_from_braiding(base.rules, r, dims)
            cat = base.replace(r=r, twist=twist)
            problems = _problems(cat)
            if not problems:
                return cat
            tried.append((tuple(roots), asg, problems[0]))
    raise CertificationError(f"{name}: no braiding candidate satisfies the hexagon equations: {tried}")
