import json
import shutil

import pytest

from gdhkit.cli import main
from conftest import data_path, require_data


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out.strip() else None), err


def test_coeffs(capsys):
    code, rep, _ = run_json(capsys, "coeffs", "--n", "2")
    assert code == 0
    assert rep["command"] == "coeffs" and rep["inputs"] == {"n": 2}
    assert [r["value"] for r in rep["rows"]] == ["3", "-1"]
    assert rep["checks"] == [{"assertion": "divisor relations", "result": "pass"}]


def test_bound_and_rationals(capsys):
    code, rep, _ = run_json(capsys, "bound", "--shape", "1^-24 2^24", "--n", "2")
    assert code == 0 and rep["rows"] == [{"bound": "0"}]
    code, rep, _ = run_json(capsys, "vsf", "--component", "A1:(1,0)")
    assert code == 0
    assert rep["rows"][0]["lhs"] == rep["rows"][0]["rhs"] == "1/8"


def test_vsf_semisimple(capsys):
    code, rep, _ = run_json(capsys, "vsf", "--component", "A2:(1,1,1)",
                            "--component", "A1:(1,1)", "--n", "6")
    assert code == 0 and rep["rows"][0]["lhs"] == "0"
    assert rep["rows"][0]["bound"] == "24"
    assert run(capsys, "vsf", "--component", "A2:(1,1,1)", "--component", "A1:(1,1)",
               "--n", "3")[0] == 2  # order 6 does not divide 3


def test_pairs(capsys):
    code, rep, _ = run_json(capsys, "pairs")
    assert code == 0
    assert len(rep["rows"]) == 82
    assert sum(r["spurious"] for r in rep["rows"]) == 13


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "enumerate")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("dim,structure")
    assert len(lines) == 222


def test_weight_of_minus_identity(capsys):
    auto = require_data("isometries", "minus1.json")
    code, rep, _ = run_json(capsys, "weight", "--auto", str(auto))
    assert code == 0
    assert rep["rows"][0] == {"order": 2, "weight": "3/2", "n": 2, "type": 0}
    code, rep, _ = run_json(capsys, "shape", "--auto", str(auto))
    assert rep["rows"][0]["shape"] == "1^{-24} 2^24" and rep["rows"][0]["fixed_rank"] == 0


def test_usage_errors(capsys):
    assert run(capsys, "coeffs")[0] == 2                          # missing --n
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "vsf", "--component", "A2(1,1,1)")[0] == 2
    assert run(capsys, "--threads", "0", "coeffs", "--n", "2")[0] == 2
    code, _, err = run(capsys, "weight", "--auto", "/nonexistent.json")
    assert code == 2 and "cannot load" in err


def test_shift_length_checked(capsys):
    auto = require_data("isometries", "identity.json")
    code, _, err = run(capsys, "weight", "--auto", str(auto), "--shift", "1/2,0")
    assert code == 2 and "24" in err


def test_failed_check_exits_one(tmp_path, capsys):
    table = tmp_path / "t.json"
    table.write_text(json.dumps({"classes": [{"name": "1a", "shape": {"1": 24}}]}))
    code, rep, _ = run_json(capsys, "co0-check", "--table", str(table))
    assert code == 1
    assert {"assertion": "167 classes", "result": "fail"} in rep["checks"]


def test_co0_check_bundled(capsys):
    code, rep, _ = run_json(capsys, "co0-check")
    assert code == 0 and rep["rows"][0]["classes"] == 167


@pytest.mark.data
def test_gdh_small_class(capsys):
    require_data("centralizers", "2d.json")
    code, rep, _ = run_json(capsys, "--threads", "1", "gdh", "--class", "2^12", "--n", "2")
    assert code == 0
    assert rep["tally"]["classes_of_order_n"] == 1
    assert rep["tally"]["type_zero_extremal"] == 1
    assert rep["rows"][0]["type"] == 0
    assert rep["summary"][0].startswith("1 conjugacy classes of order 2")


@pytest.mark.data
def test_gdh_rejects_class_without_fixed_vectors(capsys):
    require_data("centralizers", "2a.json")
    code, _, err = run(capsys, "gdh", "--class", "2A", "--n", "2")
    assert code == 2 and "fixes no vector" in err


@pytest.mark.data
def test_orbits_sizes(capsys):
    require_data("centralizers", "10j.json")
    code, rep, _ = run_json(capsys, "orbits", "--class", "10j", "--n", "10")
    assert code == 0
    assert sum(r["size"] for r in rep["rows"]) == 25


def test_data_directory_override(tmp_path, monkeypatch, capsys):
    # a data directory without centralizer files: the class is reported as unavailable
    shutil.copy(data_path("co0_classes.json"), tmp_path / "co0_classes.json")
    monkeypatch.setenv("GDHKIT_DATA", str(tmp_path))
    code, _, err = run(capsys, "gdh", "--class", "10j", "--n", "10")
    assert code == 2 and "data unavailable" in err
