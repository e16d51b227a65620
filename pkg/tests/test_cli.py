import csv
import io
import json
import subprocess
import sys

import pytest

from preplab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_line_build(capsys):
    code, out, _ = run(capsys, "line-build", "--c", "1,2", "--sigma", "1,2", "--d", "4")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "preplab/1"
    assert doc["alpha"] == ["-3", "2"] and doc["beta"] == ["-14", "14"]
    assert doc["A"] == "2 + -3*z + 1*z^2" and doc["B"] == "14 + -14*z + 1*z^4"


def test_line_build_coincident_points_is_usage_error(capsys):
    code, _, err = run(capsys, "line-build", "--c", "1,1", "--d", "4")
    assert code == 2 and "c_1 and c_2" in err


def test_prep_find(capsys):
    code, out, _ = run(capsys, "prep-find", "--family", "d=2,m=1", "--c", "0", "--N", "3",
                       "--tol", "1e-10")
    doc = json.loads(out)
    assert code == 0
    assert [h["t"][0] for h in doc["hits"]] == [0.0, -1.0, -2.0]
    assert all(h["status"] == "numeric" for h in doc["hits"])
    assert [h["exact"]["verdict"] for h in doc["hits"]] == ["Preperiodic"] * 3


def test_prep_find_csv(capsys):
    code, out, _ = run(capsys, "--csv", "prep-find", "--family", "d=2,m=1", "--c", "0", "--N", "2")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1 and rows[0]["n"] == "2"


def test_prep_find_line_needs_alpha(capsys):
    code, _, err = run(capsys, "prep-find", "--family", "d=4,m=3", "--c", "0", "--N", "2")
    assert code == 2


def test_iterate_poly(capsys):
    code, out, _ = run(capsys, "iterate", "--poly", "z^2 - 1", "--c", "0", "--n", "3")
    doc = json.loads(out)
    assert [r["value"] for r in doc["orbit"]] == ["0", "-1", "0", "-1"]
    assert (doc["verdict"], doc["n"], doc["k"]) == ("Preperiodic", 2, 0)


def test_iterate_line(capsys):
    code, out, _ = run(capsys, "iterate", "--points", "1,2", "--d", "4", "--c", "0", "--n", "2")
    doc = json.loads(out)
    assert [r["deg_t"] for r in doc["orbit"]] == [None, 1, 4]


def test_iterate_deg_cap(capsys):
    code, _, err = run(capsys, "--deg-cap", "10", "iterate", "--points", "1,2", "--d", "4",
                       "--c", "0", "--n", "4")
    assert code == 1 and "ResourceError" in err


def test_escape_grid(capsys, tmp_path):
    out_path = tmp_path / "grid.pgm"
    code, out, _ = run(capsys, "escape-grid", "--family", "d=2,m=1", "--region=-2,2,-2,2",
                       "--res", "64", "--nmax", "20", "--radius", "4", "--out", str(out_path))
    doc = json.loads(out)
    assert code == 0 and out_path.read_bytes().startswith(b"P5\n64 64\n255\n")
    side = json.loads((tmp_path / "grid.json").read_text())
    assert side["region"] == [-2.0, 2.0, -2.0, 2.0] and side["n_max"] == 20
    assert doc["never_escaped_cells"] > 0


def test_structure(capsys, tmp_path):
    g = tmp_path / "g.json"
    g.write_text(json.dumps(["0", "0", "0", "1"]))
    code, out, _ = run(capsys, "structure", "--commutant", str(g), "--nmax", "1",
                       "--exceptional", str(g))
    doc = json.loads(out)
    assert doc["commutant"]["maps"] == ["1*z", "-1*z"]
    assert doc["exceptional"]["kind"] == "PowerMap"
    g.write_text(json.dumps(["0", "0", "0", "0", "1"]))
    code, out, _ = run(capsys, "structure", "--check-root", str(g), "--e", "2")
    assert json.loads(out)["root"]["h"] == ["0", "0", "1"]


def test_structure_bipoly_root_witness(capsys, tmp_path):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"ring": "T", "coeffs": ["14 + 2*t", "-14 + -3*t", "t", "0", "1"]}))
    code, out, _ = run(capsys, "structure", "--check-root", str(g), "--e", "2")
    doc = json.loads(out)["root"]
    assert code == 0 and not doc["found"] and doc["witness"]


def test_structure_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "structure", "--check-root", str(tmp_path / "nope.json"))
    assert code == 2


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "--seed", "7", "verify-suite", "--suites", "lines", "--cases", "20")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 7
    assert [s["suite"] for s in doc["suites"]] == ["lines"] and doc["suites"][0]["cases"] == 20


def test_verify_suite_fault_gives_exit_1(capsys):
    code, out, _ = run(capsys, "verify-suite", "--suites", "lines", "--cases", "2", "--inject-fault")
    assert code == 1 and json.loads(out)["failures"] == 1


def test_unknown_suite_is_usage_error(capsys):
    code, _, _ = run(capsys, "verify-suite", "--suites", "nope")
    assert code == 2


def test_argparse_errors_exit_2():
    for argv in (["nosuch"], ["line-build", "--d", "x"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "preplab", "line-build", "--c", "1", "--d", "3"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["alpha"] == ["-1"]
