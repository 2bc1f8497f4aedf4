"""Matrix and report export, human-readable and structured."""
from __future__ import annotations

import numpy as np

from .basis import BasisIndex
from .catfile import complex_pair
from .category import CoherenceReport, RibbonCategory


def matrix_rows(mat: np.ndarray) -> list[list[list[float]]]:
    """Dense rows of ``[re, im]`` pairs."""
    return [[complex_pair(v) for v in row] for row in np.asarray(mat)]


def _fmt_entry(v: complex, digits: int) -> str:
    re = 0.0 if abs(v.real) < 0.5 * 10**-digits else v.real
    im = 0.0 if abs(v.imag) < 0.5 * 10**-digits else v.imag
    if im == 0:
        return f"{re:.{digits}f}"
    if re == 0:
        return f"{im:.{digits}f}i"
    return f"{re:.{digits}f}{im:+.{digits}f}i"


def format_matrix(mat: np.ndarray, digits: int = 4) -> list[str]:
    mat = np.asarray(mat)
    if mat.size == 0:
        return [f"  (empty {mat.shape[0]}x{mat.shape[1]} matrix)"]
    cells = [[_fmt_entry(complex(v), digits) for v in row] for row in mat]
    width = max(len(c) for row in cells for c in row)
    return ["  [ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells]


def basis_records(cat: RibbonCategory, basis: BasisIndex) -> list[dict]:
    out = []
    for i, t in enumerate(basis):
        if hasattr(t, "a"):
            out.append({"index": i, "a": [cat.name_of(v) for v in t.a], "b": [cat.name_of(v) for v in t.b]})
        else:
            out.append({"index": i, "path": [cat.name_of(v) for v in t.path]})
    return out


def coherence_record(rep: CoherenceReport, cat: RibbonCategory, limit: int = 20) -> dict:
    return {
        "name": rep.name,
        "passed": rep.passed,
        "instances": rep.instances,
        "max_residual": rep.max_residual,
        "failures": [
            {"kind": kind, "labels": [cat.name_of(v) for v in labels], "residual": r}
            for kind, labels, r in rep.failures[:limit]
        ],
        "failure_count": len(rep.failures),
    }
