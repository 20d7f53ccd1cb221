from __future__ import annotations

import json

import pytest

import main
from codes.fixtures import fixture_path


def test_metrics(capsys):
    assert main.main(["metrics", "--in", fixture_path("hamming_7_4.txt")]) == main.EXIT_OK
    out = capsys.readouterr().out
    assert "parameters: [7,4,3]^4" in out
    assert "weight enumerator: 1+7z^3+7z^4+z^7" in out
    assert "even: no" in out


def test_canon(capsys):
    assert main.main(["canon", "--in", fixture_path("hamming_7_4.txt")]) == main.EXIT_OK
    first_line = capsys.readouterr().out.splitlines()[0]
    assert len(first_line.split(":")) == 4


def test_classify_then_report(tmp_path, capsys):
    out_dir = str(tmp_path / "out")
    argv = ["classify", "--dperp", "3", "--k", "3", "--max-n", "8", "--out", out_dir]
    assert main.main(argv) == main.EXIT_OK
    assert "[8,3]^3: 0" in capsys.readouterr().out

    assert main.main(["report", "--dir", out_dir, "--csv", "--stats"]) == main.EXIT_OK
    out = capsys.readouterr().out
    assert "dperp,even,n,k,count,starred,complete" in out
    assert "L(3,3) = 7 (computed)" in out


def test_classify_requires_parameters(capsys):
    assert main.main(["classify", "--k", "3"]) == main.EXIT_ERROR
    assert "--dperp" in capsys.readouterr().err


def test_usage_error_is_not_unresolved():
    assert main.main(["no-such-command"]) == main.EXIT_ERROR


def test_nonexist_desk_scale(tmp_path, capsys):
    evidence = tmp_path / "evidence.json"
    argv = ["nonexist", "--target", "8,2,7", "--db-dir", str(tmp_path / "db"),
            "--desk-scale", "--evidence", str(evidence)]
    assert main.main(argv) == main.EXIT_OK
    assert "[8,2,7]: NONEXISTENT" in capsys.readouterr().out
    assert json.loads(evidence.read_text(encoding="utf-8"))["verdict"] == "NONEXISTENT"


def test_nonexist_unresolved(tmp_path):
    argv = ["nonexist", "--target", "8,2,7", "--db-dir", str(tmp_path / "db")]
    assert main.main(argv) == main.EXIT_UNRESOLVED


def test_config_file_fills_missing_flags(tmp_path, capsys):
    config_path = tmp_path / "run.json"
    out_dir = tmp_path / "from-config"
    config_path.write_text(json.dumps({"dperp": 3, "k": 2, "max_n": 5, "out": str(out_dir)}), encoding="utf-8")
    assert main.main(["--config", str(config_path), "classify"]) == main.EXIT_OK
    assert (out_dir / "k2_d3_n4.codedb").exists()


def test_config_file_rejects_unknown_keys(tmp_path):
    config_path = tmp_path / "run.json"
    config_path.write_text(json.dumps({"colour": "red"}), encoding="utf-8")
    assert main.main(["--config", str(config_path), "report"]) == main.EXIT_ERROR


@pytest.mark.slow
def test_verify_fixtures(capsys):
    assert main.main(["verify-fixtures"]) == main.EXIT_OK
    assert "FAILED" not in capsys.readouterr().out


def test_nonexist_rejects_k_d_bounds_layout(tmp_path, capsys):
    bounds = tmp_path / "bounds.txt"
    bounds.write_text("# k d dhi\n2 7\n", encoding="utf-8")
    argv = ["nonexist", "--target", "8,2,7", "--db-dir", str(tmp_path / "db"),
            "--desk-scale", "--bounds", str(bounds)]
    assert main.main(argv) == main.EXIT_ERROR
    assert "expected 'n k dhi'" in capsys.readouterr().err


def test_nonexist_with_bounds_file(tmp_path, capsys):
    bounds = tmp_path / "bounds.txt"
    bounds.write_text("8 2 5\n", encoding="utf-8")
    argv = ["nonexist", "--target", "8,2,7", "--db-dir", str(tmp_path / "db"),
            "--desk-scale", "--bounds", str(bounds)]
    assert main.main(argv) == main.EXIT_OK
    assert "[8,2,7]: NONEXISTENT" in capsys.readouterr().out
