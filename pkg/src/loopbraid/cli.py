"""Command-line interface.

Subcommands: ``verify``, ``rep``, ``eval``, ``oracle``, ``dims``,
``export-builtin``. Exit status is 0 when every check passes, 1 on a
mathematical failure (coherence, relation, equivalence, word error) and 2
on a usage or I/O error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import catfile
from .basis import dim_hom, enumerate_paired_basis
from .builtin import CertificationError, TYParams, ising, tambara_yamagami, trivial
from .catfile import CategoryFileError, dumps
from .category import (
    DEFAULT_TOL,
    CategoryError,
    RibbonCategory,
    validate_structure,
    verify_hexagon,
    verify_pentagon,
)
from .export import basis_records, coherence_record, format_matrix, matrix_rows
from .oracle import oracle_equivalence, oracle_generator_matrix
from .rep import build_lb_representation, check_trivial_double_braiding, verify_lb_relations
from .words import S, SIGMA, WordIndexError, WordParseError, evaluate, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

BUILTINS = ("trivial", "ising", "ty")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    builtin: Optional[str]
    file: Optional[str]
    x: Optional[str]
    y: Optional[str]
    z: Optional[str]
    n: int
    tol: float
    output: Optional[str]
    format: str


def _sign(text: str) -> int:
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError(f"expected +1 or -1, got {text!r}")


def _signs(text: str) -> tuple[int, ...]:
    return tuple(_sign(t.strip()) for t in text.split(",") if t.strip())


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("n must be at least 1")
    return v


def _add_category_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--builtin", choices=BUILTINS, help="built-in category (default: ising)")
    src.add_argument("--file", help="category data file (JSON)")
    p.add_argument("--ty-k", type=int, default=1, help="TY over (Z_2)^k (default 1)")
    p.add_argument("--ty-sign", type=_sign, default=1, help="sign of the F^{mmm}_m normalization")
    p.add_argument("--ty-roots", type=_signs, default=None, help="comma list of +-1 choosing q(e_i)")
    p.add_argument("--ty-alpha", type=_sign, default=None, help="sign choosing the R^{mm} scale")


def _add_common(p: argparse.ArgumentParser, objects: bool = True) -> None:
    _add_category_args(p)
    if objects:
        p.add_argument("-x", help="first strand object (default: unit)")
        p.add_argument("-y", help="second strand object (default: unit)")
        p.add_argument("-z", help="target object (default: unit)")
        p.add_argument("-n", type=_positive_int, default=2, help="number of double strands (default 2)")
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL, help="comparison tolerance")
    p.add_argument("--output", "-o", help="write output here instead of stdout")
    p.add_argument("--format", choices=("human", "structured"), default="human")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="loopbraid",
        description="Loop braid group representations from ribbon fusion categories.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="structural, pentagon and hexagon checks")
    _add_common(p, objects=False)

    p = sub.add_parser("rep", help="build the representation and verify all relations")
    _add_common(p)
    p.add_argument("--no-matrices", action="store_true", help="omit matrices from human output")

    p = sub.add_parser("eval", help="evaluate a loop braid word")
    _add_common(p)
    p.add_argument("word", help='word such as "x1 s2 x1^-1" (x = sigma, s = exchange)')

    p = sub.add_parser("oracle", help="compare closed forms with the crossing oracle")
    _add_common(p)
    p.add_argument("--show-matrices", action="store_true", help="print the oracle matrices")

    p = sub.add_parser("dims", help="Hom-space dimension and basis listing")
    _add_common(p)

    p = sub.add_parser("export-builtin", help="write a built-in category as a data file")
    _add_category_args(p)
    p.add_argument("--output", "-o", help="write here instead of stdout")
    return ap


# ---------------------------------------------------------------------------
# helpers


def load_category(args) -> RibbonCategory:
    if args.file:
        try:
            return catfile.load_category(args.file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror or exc}") from exc
        except CategoryError as exc:
            raise UsageError(f"{args.file}: {exc}") from exc
    name = args.builtin or "ising"
    if name == "trivial":
        return trivial()
    if name == "ising":
        return ising()
    try:
        params = TYParams(
            k=args.ty_k, sign=args.ty_sign, root_signs=args.ty_roots, alpha_sign=args.ty_alpha
        )
        return tambara_yamagami(params)
    except CertificationError:
        raise
    except CategoryError as exc:
        raise UsageError(f"TY parameters: {exc}") from exc


def _object(cat: RibbonCategory, name: Optional[str]) -> int:
    if name is None:
        return cat.unit
    try:
        return cat.id_of(name)
    except KeyError:
        raise UsageError(f"unknown object {name!r}; known objects: {', '.join(cat.names())}") from None


def _config(args) -> RunConfig:
    return RunConfig(
        builtin=None if args.file else (getattr(args, "builtin", None) or "ising"),
        file=getattr(args, "file", None),
        x=getattr(args, "x", None),
        y=getattr(args, "y", None),
        z=getattr(args, "z", None),
        n=getattr(args, "n", 0),
        tol=args.tol,
        output=args.output,
        format=args.format,
    )


def _config_echo(cfg: RunConfig, cat: RibbonCategory, objs: Optional[tuple] = None) -> dict:
    out = {k: v for k, v in asdict(cfg).items() if k not in ("output", "format")}
    out["category"] = cat.name
    if objs is not None:
        out["x"], out["y"], out["z"] = (cat.name_of(v) for v in objs)
    else:
        for k in ("x", "y", "z", "n"):
            out.pop(k)
    return out


def _gen_name(kind: str, i: int) -> str:
    return f"{'x' if kind == SIGMA else 's'}{i}"


def _labels(cat: RibbonCategory, labels: tuple) -> str:
    return "(" + ",".join(cat.name_of(v) if isinstance(v, int) and 0 <= v < cat.num_objects else str(v) for v in labels) + ")"


def _hom_label(cat, x, y, z, n) -> str:
    return f"Hom({cat.name_of(z)}, ({cat.name_of(x)}⊗{cat.name_of(y)})^⊗{n})"


class _Writer:
    """Collects output and writes it once, to a file or stdout."""

    def __init__(self, path: Optional[str]):
        self.path = path
        self.lines: list[str] = []

    def __call__(self, line: str = "") -> None:
        self.lines.append(line)

    def flush(self) -> None:
        text = "\n".join(self.lines) + "\n"
        if self.path:
            try:
                Path(self.path).write_text(text, encoding="utf-8")
            except OSError as exc:
                raise UsageError(f"cannot write {self.path}: {exc.strerror or exc}") from exc
        else:
            sys.stdout.write(text)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args, out: _Writer) -> int:
    cfg = _config(args)
    cat = load_category(args)
    structure = validate_structure(cat, cfg.tol)
    # coherence sweeps only need the stored F and R entries, so they run even
    # when the structure check fails; incomplete data stops them
    reports, skipped = [], []
    for check in (verify_pentagon, verify_hexagon):
        try:
            reports.append(check(cat, cfg.tol))
        except CategoryError as exc:
            skipped.append(f"{check.__name__.split('_')[1]} skipped: {exc}")
    ok = structure.ok and not skipped and all(r.passed for r in reports)
    if cfg.format == "structured":
        out(dumps({
            "command": "verify",
            "config": _config_echo(cfg, cat),
            "structure": [
                {"kind": k, "where": _labels(cat, w), "detail": d} for k, w, d in structure.violations
            ],
            "coherence": [coherence_record(r, cat) for r in reports],
            "skipped": skipped,
            "passed": ok,
        }))
        return EXIT_OK if ok else EXIT_FAIL
    out(f"category {cat.name}: {cat.num_objects} objects ({', '.join(cat.names())})")
    if structure.ok:
        out("structure: pass")
    else:
        out(f"structure: FAIL ({len(structure.violations)} violations)")
        for kind, where, detail in structure.violations[:20]:
            out(f"  {kind} at {_labels(cat, where)}" + (f": {detail}" if detail else ""))
    for line in skipped:
        out(line)
    for r in reports:
        out(r.summary())
        for kind, labels, res in r.failures[:10]:
            out(f"  {kind} fails at {_labels(cat, labels)}: residual {res:.3e}")
    out("result: " + ("pass" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_FAIL


def _objects(args, cat):
    return _object(cat, args.x), _object(cat, args.y), _object(cat, args.z)


def cmd_rep(args, out: _Writer) -> int:
    cfg = _config(args)
    cat = load_category(args)
    x, y, z = _objects(args, cat)
    n = cfg.n
    rep = build_lb_representation(cat, x, y, z, n, cfg.tol)
    report = verify_lb_relations(rep, cfg.tol)
    verdict = check_trivial_double_braiding(cat, x, y, cfg.tol)
    warnings = []
    if rep.dim == 0:
        warnings.append(f"{_hom_label(cat, x, y, z, n)} is zero-dimensional; relations hold vacuously")
    gens = [(SIGMA, i) for i in range(1, n)] + [(S, j) for j in range(1, n)]
    for w in warnings:
        _warn(w)
    if cfg.format == "structured":
        out(dumps({
            "command": "rep",
            "config": _config_echo(cfg, cat, (x, y, z)),
            "dimension": rep.dim,
            "double_braiding": {
                "trivial": verdict.trivial,
                "residuals": {cat.name_of(w): r for w, r in sorted(verdict.residuals.items())},
                "witness": None if verdict.witness is None else {
                    "object": cat.name_of(verdict.witness[0]), "residual": verdict.witness[1]
                },
                "summands": {cat.name_of(c): v for c, v in verdict.summands.items()},
                "sufficient_condition": verdict.sufficient,
            },
            "basis": basis_records(cat, rep.basis),
            "matrices": {_gen_name(k, i): matrix_rows(rep.generator(k, i)) for k, i in gens},
            "relations": {
                name: [{"indices": list(idx), "residual": r} for idx, r in inst]
                for name, inst in report.instances.items()
            },
            "warnings": warnings,
            "passed": report.passed,
        }))
        return EXIT_OK if report.passed else EXIT_FAIL
    out(f"category {cat.name}; {_hom_label(cat, x, y, z, n)}; dimension {rep.dim}")
    if verdict.trivial:
        out("double braiding of x⊗y: trivial")
    else:
        w, r = verdict.witness
        out(f"double braiding of x⊗y: NONTRIVIAL (s1^2 - 1 on Hom({cat.name_of(w)}, ...) has residual {r:.3e})")
    for c, kind in verdict.summands.items():
        out(f"  summand {cat.name_of(c)}: {kind}")
    out("  every summand boson or fermion: " + ("yes" if verdict.sufficient else "no"))
    out("basis:")
    for line in rep.basis.dump(cat):
        out("  " + line)
    if not args.no_matrices:
        for k, i in gens:
            out(f"{_gen_name(k, i)} =")
            for line in format_matrix(rep.generator(k, i)):
                out(line)
    out("relations:")
    for line in report.lines():
        out("  " + line)
    for name, idx, r in report.failures():
        out(f"  {name}{idx} residual {r:.3e}")
    out("result: " + ("pass" if report.passed else "FAIL"))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_eval(args, out: _Writer) -> int:
    cfg = _config(args)
    cat = load_category(args)
    x, y, z = _objects(args, cat)
    try:
        w = parse_word(args.word)
    except WordParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rep = build_lb_representation(cat, x, y, z, cfg.n, cfg.tol)
    try:
        mat = evaluate(rep, w)
    except WordIndexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if rep.dim == 0:
        _warn(f"{_hom_label(cat, x, y, z, cfg.n)} is zero-dimensional")
    is_identity = bool(np.abs(mat - np.eye(rep.dim)).max() < cfg.tol) if rep.dim else True
    if cfg.format == "structured":
        out(dumps({
            "command": "eval",
            "config": _config_echo(cfg, cat, (x, y, z)),
            "word": str(w),
            "dimension": rep.dim,
            "basis": basis_records(cat, rep.basis),
            "matrix": matrix_rows(mat),
            "is_identity": is_identity,
        }))
        return EXIT_OK
    out(f"word: {str(w) or '(empty)'}")
    out(f"{_hom_label(cat, x, y, z, cfg.n)}; dimension {rep.dim}")
    for line in format_matrix(mat):
        out(line)
    out("identity within tolerance: " + ("yes" if is_identity else "no"))
    return EXIT_OK


def cmd_oracle(args, out: _Writer) -> int:
    cfg = _config(args)
    cat = load_category(args)
    x, y, z = _objects(args, cat)
    n = cfg.n
    report = oracle_equivalence(cat, x, y, z, n, cfg.tol)
    gens = [(SIGMA, i) for i in range(1, n)] + [(S, j) for j in range(1, n)]
    oracle = {}
    if args.show_matrices:
        oracle = {(k, i): oracle_generator_matrix(cat, x, y, z, n, k, i) for k, i in gens}
    if cfg.format == "structured":
        doc = {
            "command": "oracle",
            "config": _config_echo(cfg, cat, (x, y, z)),
            "residuals": {_gen_name(k, i): r for (k, i), r in sorted(report.residuals.items())},
            "max_residual": report.max_residual,
            "passed": report.passed,
        }
        if oracle:
            doc["basis"] = basis_records(cat, enumerate_paired_basis(cat, x, y, z, n))
            doc["oracle_matrices"] = {_gen_name(k, i): matrix_rows(m) for (k, i), m in oracle.items()}
        out(dumps(doc))
        return EXIT_OK if report.passed else EXIT_FAIL
    out(f"category {cat.name}; {_hom_label(cat, x, y, z, n)}")
    for line in report.lines():
        out("  " + line)
    for (k, i), m in oracle.items():
        out(f"oracle {_gen_name(k, i)} =")
        for line in format_matrix(m):
            out(line)
    out("result: " + ("pass" if report.passed else "FAIL") + f" (max residual {report.max_residual:.3e})")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_dims(args, out: _Writer) -> int:
    cfg = _config(args)
    cat = load_category(args)
    x, y, z = _objects(args, cat)
    n = cfg.n
    basis = enumerate_paired_basis(cat, x, y, z, n)
    d = dim_hom(cat, [x, y] * n, z)
    if cfg.format == "structured":
        out(dumps({
            "command": "dims",
            "config": _config_echo(cfg, cat, (x, y, z)),
            "dimension": d,
            "basis": basis_records(cat, basis),
        }))
        return EXIT_OK
    out(f"dim {_hom_label(cat, x, y, z, n)} = {d}")
    for line in basis.dump(cat):
        out(line)
    return EXIT_OK


def cmd_export(args, out: _Writer) -> int:
    cat = load_category(args)
    out(catfile.dumps_category(cat).rstrip("\n"))
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "rep": cmd_rep,
    "eval": cmd_eval,
    "oracle": cmd_oracle,
    "dims": cmd_dims,
    "export-builtin": cmd_export,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = _Writer(args.output)
    try:
        status = COMMANDS[args.command](args, out)
        out.flush()
        return status
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CategoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
