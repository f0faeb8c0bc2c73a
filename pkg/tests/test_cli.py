from __future__ import annotations

import json

import pytest

from matsys.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_model_case(capsys):
    code, out, _ = _run(capsys, "classify", "--alpha", "1", "--beta", "1", "--gamma", "1")
    assert code == 0 and "MultipleRoot" in out


def test_classify_json(capsys):
    code, out, _ = _run(capsys, "classify", "--alpha", "0", "--beta", "2", "--gamma", "0", "--json")
    data = json.loads(out)
    assert code == 0 and data["tag"] == "HalfSum"


def test_roots_json(capsys):
    code, out, _ = _run(capsys, "roots", "--alpha", "0", "--beta", "14", "--gamma", "-18", "--json")
    assert code == 0 and json.loads(out)["exact"] == ["-3", "1", "2"]


def test_verify_missing_file(capsys, tmp_path):
    code, _, err = _run(capsys, "verify", "--in", str(tmp_path / "nonexistent.json"))
    assert code == 2 and err.startswith("error:")


def test_verify_malformed_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, _ = _run(capsys, "verify", "--in", str(p))
    assert code == 2


def test_ncgb_reduce(capsys, tmp_path):
    p = tmp_path / "a5.txt"
    p.write_text("1*a.a.a.a.a\n")
    code, out, _ = _run(capsys, "ncgb", "--system", "s4", "--maxdeg", "6", "--reduce", str(p))
    assert code == 0 and "reduces to 0" in out


def test_ncgb_reduce_failure(capsys, tmp_path):
    p = tmp_path / "comm.txt"
    p.write_text("a.b - b.a\n")
    code, out, _ = _run(capsys, "ncgb", "--system", "s3", "--maxdeg", "5", "--reduce", str(p))
    assert code == 1


def test_construct_verify_flag_pipeline(capsys, tmp_path):
    sol = tmp_path / "n9.json"
    code, _, _ = _run(capsys, "construct", "--case", "nil-n9", "--out", str(sol))
    assert code == 0 and sol.exists()
    code, out, _ = _run(capsys, "verify", "--in", str(sol))
    assert code == 0
    code, out, _ = _run(capsys, "verify", "--in", str(sol), "--relations", "R51", "--json")
    assert code == 0 and json.loads(out)["pass"] is True
    code, out, _ = _run(capsys, "flag", "--in", str(sol), "--json")
    data = json.loads(out)
    assert code == 0
    assert data["signature"] == [1, 2, 3, 2, 1]


def test_verify_detects_tampering(capsys, tmp_path):
    sol = tmp_path / "n3.json"
    _run(capsys, "construct", "--case", "nil-n3", "--x", "1", "--y", "0", "--out", str(sol))
    data = json.loads(sol.read_text())
    data["matrices"]["a"]["entries"][0][2] = "1"
    sol.write_text(json.dumps(data))
    code, _, _ = _run(capsys, "verify", "--in", str(sol))
    assert code == 1


def test_construct_precondition_violation(capsys):
    code, _, err = _run(capsys, "construct", "--case", "nil-n3", "--x", "-1/2", "--y", "0")
    assert code == 2 and "error" in err
    code, _, _ = _run(capsys, "construct", "--case", "half-sum", "--m", "3", "--sigma", "3")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ("construct", "--case", "multiple-root", "--phi", "1", "--psi", "2", "--theta", "1", "--alphaN", "1"),
    ("construct", "--case", "half-sum", "--m", "2", "--sigma", "3", "--assign", "012"),
    ("construct", "--case", "generic", "--alpha", "4", "--beta", "10", "--gamma", "28", "--assign", "012,201", "--conjugate"),
    ("construct", "--case", "sigma-pattern"),
    ("construct", "--case", "tsys", "--m", "1", "--z", "[[0]]", "--q", "[[0]]"),
])
def test_constructions_verify(capsys, tmp_path, argv):
    out = tmp_path / "s.json"
    code, _, _ = _run(capsys, *argv, "--out", str(out))
    assert code == 0
    code, text, _ = _run(capsys, "verify", "--in", str(out))
    assert code == 0, text


def test_json_output_is_deterministic(capsys):
    argv = ("construct", "--case", "generic", "--alpha", "4", "--beta", "10", "--gamma", "28",
            "--assign", "012,201", "--conjugate", "--seed", "7", "--json")
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second


def test_quat_region(capsys):
    code, out, _ = _run(capsys, "quat", "--v1", "1", "--v2", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["verdict"]["exists_noncommuting"] is True
    code, _, _ = _run(capsys, "quat", "--v1", "1", "--v2", "-1")
    assert code == 2
