import json
import subprocess
import sys

import pytest

from loopbraid.catfile import dumps_category
from loopbraid.cli import main

from .conftest import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def broken_file(tmp_path, ising_cat):
    doc = json.loads(dumps_category(ising_cat))
    for rec in doc["F"]:
        if [rec[k] for k in "abcdef"] == ["sigma"] * 4 + ["vac", "vac"]:
            rec["value"] = [-v for v in rec["value"]]
    path = tmp_path / "broken.cat"
    path.write_text(json.dumps(doc))
    return path


def test_verify_builtins(capsys):
    for name in ("ising", "trivial", "ty"):
        code, out, _ = run(capsys, "verify", "--builtin", name)
        assert code == 0 and "result: pass" in out


def test_verify_ty_params(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "ty", "--ty-k", "2", "--ty-sign", "-1")
    assert code == 0 and "TY(Z2^2)[-]" in out


def test_verify_broken_file(capsys, broken_file):
    code, out, _ = run(capsys, "verify", "--file", str(broken_file))
    assert code == 1
    assert "pentagon: FAIL" in out
    assert "pentagon fails at (sigma,sigma,sigma,sigma," in out


def test_verify_structured(capsys, broken_file):
    code, out, _ = run(capsys, "verify", "--file", str(broken_file), "--format", "structured")
    doc = json.loads(out)
    assert code == 1 and doc["passed"] is False
    pent = doc["coherence"][0]
    assert pent["name"] == "pentagon" and pent["failure_count"] > 0
    assert pent["failures"][0]["labels"][:4] == ["sigma"] * 4


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--file", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in err


def test_bad_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "verify", "--file", str(p))
    assert code == 2 and "not valid JSON" in err


def test_usage_errors(capsys):
    assert run(capsys, "rep", "--builtin", "nope")[0] == 2
    assert run(capsys, "rep", "-n", "0")[0] == 2
    assert run(capsys, "rep", "--tol", "-1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    code, _, err = run(capsys, "rep", "--builtin", "ising", "-x", "tau")
    assert code == 2 and "unknown object 'tau'" in err


def test_rep_ising(capsys):
    code, out, _ = run(capsys, "rep", "--builtin", "ising", "-x", "sigma", "-y", "sigma", "-z", "vac", "-n", "3")
    assert code == 0
    assert "dimension 4" in out and "double braiding of x⊗y: trivial" in out
    assert "summand psi: fermion" in out and "summand vac: boson" in out
    assert out.count("[ ") == 4 * 4  # four 4x4 matrices
    assert "result: pass" in out


def test_rep_negative_control(capsys):
    code, out, _ = run(capsys, "rep", "--builtin", "ising", "-x", "sigma", "-y", "vac", "-z", "sigma", "-n", "3")
    assert code == 1
    assert "NONTRIVIAL" in out
    assert "S2      FAIL" in out
    assert "result: FAIL" in out


def test_rep_fibonacci_m2(capsys):
    code, out, _ = run(capsys, "rep", "--file", str(DATA / "fibonacci.json"), "-x", "tau", "-y", "tau", "-n", "3")
    assert code == 1
    assert "S2      FAIL" in out and "M2      FAIL" in out


def test_rep_trivial(capsys):
    code, out, _ = run(capsys, "rep", "--builtin", "trivial", "-n", "2")
    assert code == 0
    assert "x1 =\n  [ 1.0000 ]\ns1 =\n  [ 1.0000 ]" in out


def test_rep_empty_basis_warns(capsys):
    code, out, err = run(capsys, "rep", "--builtin", "ty", "--ty-k", "2", "-x", "m", "-y", "m", "-z", "m", "-n", "2")
    assert code == 0
    assert "zero-dimensional" in err
    assert "dimension 0" in out


def test_rep_structured_deterministic(capsys, tmp_path):
    argv = ["rep", "--builtin", "ty", "--ty-k", "2", "-x", "m", "-y", "m", "-z", "01", "-n", "3", "--format", "structured"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["--output", str(a)]) == 0
    assert main(argv + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["dimension"] == 16 and len(doc["basis"]) == 16
    assert set(doc["matrices"]) == {"x1", "x2", "s1", "s2"}
    assert len(doc["matrices"]["x1"]) == 16 and len(doc["matrices"]["x1"][0][0]) == 2
    assert doc["double_braiding"]["trivial"] is True
    assert doc["config"]["z"] == "01" and doc["passed"] is True


def test_eval(capsys):
    base = ["eval", "--builtin", "ising", "-x", "sigma", "-y", "sigma", "-n", "2"]
    code, out, _ = run(capsys, *base, "s1 s1")
    assert code == 0 and "identity within tolerance: yes" in out
    code, out, _ = run(capsys, *base, "")
    assert code == 0 and "(empty)" in out and "identity within tolerance: yes" in out
    code, out, _ = run(capsys, *base, "x1")
    assert code == 0


def test_eval_errors(capsys):
    base = ["eval", "--builtin", "ising", "-x", "sigma", "-y", "sigma", "-n", "3"]
    code, _, err = run(capsys, *base, "x9")
    assert code == 1 and "out of range" in err
    code, _, err = run(capsys, *base, "x1 q2")
    assert code == 1 and "byte offset 3" in err


def test_eval_structured(capsys):
    code, out, _ = run(
        capsys, "eval", "--builtin", "ising", "-x", "sigma", "-y", "sigma", "-n", "2", "--format", "structured", "s1 s1"
    )
    doc = json.loads(out)
    assert code == 0 and doc["is_identity"] and doc["word"] == "s1 s1"


@pytest.mark.parametrize("z,n", [("vac", 2), ("psi", 3)])
def test_oracle_ising(capsys, z, n):
    code, out, _ = run(capsys, "oracle", "--builtin", "ising", "-x", "sigma", "-y", "sigma", "-z", z, "-n", str(n))
    assert code == 0 and "result: pass" in out


def test_oracle_trivial_and_matrices(capsys):
    code, out, _ = run(capsys, "oracle", "--builtin", "trivial", "-n", "3", "--show-matrices")
    assert code == 0 and "oracle x1 =" in out
    code, out, _ = run(
        capsys, "oracle", "--builtin", "ising", "-x", "sigma", "-y", "sigma", "-n", "2", "--show-matrices",
        "--format", "structured",
    )
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and "oracle_matrices" in doc


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--builtin", "ising", "-x", "sigma", "-y", "sigma", "-z", "psi", "-n", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "dim Hom(psi, (sigma⊗sigma)^⊗3) = 4"
    assert lines[1].startswith("0 a=(")


def test_export_builtin_round_trip(capsys, tmp_path):
    p = tmp_path / "ty.json"
    assert main(["export-builtin", "--builtin", "ty", "--ty-k", "1", "--output", str(p)]) == 0
    code, out, _ = run(capsys, "verify", "--file", str(p))
    assert code == 0
    q = tmp_path / "ty2.json"
    assert main(["export-builtin", "--file", str(p), "--output", str(q)]) == 0
    assert p.read_bytes() == q.read_bytes()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "loopbraid", "verify", "--builtin", "trivial"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "result: pass" in proc.stdout
