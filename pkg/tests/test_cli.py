"""Command line front end: report schema, determinism, exit codes."""

import json

from reescalc.cli import main

RR_PROBLEM = """\
ring {
  vars = X, Y
  char = 0
}
matrix {
  row = X^4, X^3*Y, X*Y^3, Y^4
}
"""

PARAM_PROBLEM = """\
matrix {
  row = X, Y, 0
  row = 0, X, Y
}
"""

INDEC_BLOCK_DIAGONAL = """\
matrix {
  row = X, Y, 0, 0, 0
  row = 0, 0, X^2, X*Y, Y^2
}
factors {
  ideal = X, Y
  ideal = X^2, X*Y, Y^2
}
"""

THM12_SQUARE_SUM = """\
matrix {
  row = X^4, X^3*Y^2, X*Y^6, Y^8, 0, 0, 0, 0
  row = 0, 0, 0, 0, X^4, X^3*Y^2, X*Y^6, Y^8
}
"""


def _run(capsys, argv):
    status = main(argv)
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_rr_report_schema_and_content(tmp_path, capsys):
    path = _write(tmp_path, "rr.problem", RR_PROBLEM)
    status, out, err = _run(capsys, ["rr", path])
    assert status == 0
    report = json.loads(out)
    assert sorted(report) == ["certification", "command", "input_digest",
                              "options", "result", "timings", "warnings"]
    assert report["command"] == "rr"
    assert len(report["input_digest"]) == 64
    assert sorted(report["result"]["generators"]) == \
        ["X*Y^3", "X^2*Y^2", "X^3*Y", "X^4", "Y^4"]
    assert report["certification"]["certified"] is False
    assert report["result"]["method"] == "colon-chain"


def test_report_is_byte_stable(tmp_path, capsys):
    path = _write(tmp_path, "rr.problem", RR_PROBLEM)
    _, out1, _ = _run(capsys, ["rr", path])
    _, out2, _ = _run(capsys, ["rr", path])
    assert out1 == out2
    assert out1.endswith("\n")


def test_json_file_matches_stdout(tmp_path, capsys):
    path = _write(tmp_path, "rr.problem", RR_PROBLEM)
    json_path = tmp_path / "out.json"
    _, out, _ = _run(capsys, ["rr", path, "--json", str(json_path)])
    assert json_path.read_text() == out


def test_param_command(tmp_path, capsys):
    path = _write(tmp_path, "param.problem", PARAM_PROBLEM)
    status, out, err = _run(capsys, ["param", path])
    assert status == 0
    report = json.loads(out)
    assert report["result"]["verdict"] is True
    assert report["result"]["reasons"]["mu"] == 3


def test_fitting_command(tmp_path, capsys):
    path = _write(tmp_path, "param.problem", PARAM_PROBLEM)
    status, out, _ = _run(capsys, ["fitting", path])
    assert status == 0
    report = json.loads(out)
    assert "0" in report["result"]["fitting_ideals"]
    assert "1" in report["result"]["fitting_ideals"]


def test_malformed_file_exits_4(tmp_path, capsys):
    path = _write(tmp_path, "bad.problem", "matrix {\n  row = X +\n}\n")
    status, out, err = _run(capsys, ["rr", path])
    assert status == 4
    assert out == ""
    assert "error" in err


def test_missing_matrix_exits_4(tmp_path, capsys):
    path = _write(tmp_path, "bad.problem", "ring {\n  char = 0\n}\n")
    status, _, err = _run(capsys, ["rr", path])
    assert status == 4


def test_missing_file_exits_4(capsys):
    status, _, err = _run(capsys, ["rr", "/nonexistent/file.problem"])
    assert status == 4
    assert "error" in err


def test_inconclusive_indecomposability_exits_2(tmp_path, capsys):
    path = _write(tmp_path, "indec.problem", INDEC_BLOCK_DIAGONAL)
    status, out, _ = _run(capsys, ["indec", path])
    assert status == 2
    report = json.loads(out)
    assert report["result"]["conclusion"] == "criterion inconclusive"


def test_inconclusive_thm12_window_exits_2(tmp_path, capsys):
    path = _write(tmp_path, "thm12.problem", THM12_SQUARE_SUM)
    status, out, _ = _run(capsys, ["thm12", path, "--nmax", "1"])
    assert status == 2
    report = json.loads(out)
    assert report["certification"]["inconclusive"] is True
    assert report["warnings"]


def test_prime_field_warning(tmp_path, capsys):
    path = _write(tmp_path, "rr.problem", RR_PROBLEM)
    status, out, _ = _run(capsys, ["rr", path, "--char", "32003"])
    assert status == 0
    report = json.loads(out)
    assert report["options"]["char"] == 32003
    assert any("infinite-field" in w for w in report["warnings"])


def test_iclose_candidate_warning_for_uncertified(tmp_path, capsys):
    problem = """\
matrix {
  row = X^3, X^2*Y^2, X*Y^3, Y^5, 0, 0, 0
  row = 0, 0, X^3, 0, X^2*Y^2, X*Y^4, Y^5
}
candidates {
  col = X*Y^4, 0
}
"""
    path = _write(tmp_path, "iclose.problem", problem)
    status, out, _ = _run(capsys, ["iclose", path])
    assert status == 0
    report = json.loads(out)
    assert report["certification"]["certified"] is False
    assert any("candidate-verified" in w for w in report["warnings"])
