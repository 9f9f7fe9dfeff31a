import json
import subprocess
import sys

import pytest

from fanok3.cli import main, run


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_ns_lattice(capsys):
    code, rep, _ = invoke(capsys, "ns-lattice", "--family", "2-6b")
    assert code == 0 and rep["status"] == "pass"
    assert rep["result"]["gram"] == [[2, 4], [4, 2]]
    assert set(rep) >= {"command", "inputs", "result", "warnings", "status"}


def test_show_tensor(capsys):
    code, rep, _ = invoke(capsys, "ns-lattice", "--family", "3-1", "--show-tensor")
    assert code == 0 and rep["result"]["base"]["id"] == "P1xP1xP1"


@pytest.mark.parametrize(
    "argv, key, value",
    [
        (["invariants", "--family", "3-1"], "determinant", 16),
        (["disc-group", "--family", "2-6b"], "divisors", [2, 6]),
        (["isotropic", "--family", "3-1", "--order", "2"], "count", 3),
        (["isotropic", "--family", "3-1", "--order", "4"], "count", 0),
        (["orth-group", "--family", "2-6b"], "order", 4),
        (["class-count", "--disc", "12"], "lattice_classes", 2),
        (["genus-reps", "--family", "2-8"], "count", 1),
        (["fm-count", "--family", "2-6b"], "count", 1),
        (["verra-cubic", "--a", "2", "--b", "3"], "value", 180),
        (["verra-cubic", "--bound", "5"], "mismatches", []),
        (["complete-basis", "--family", "3-1", "--vector", "1,0,0"], "gram", [[0, 2, 2], [2, 0, 2], [2, 2, 0]]),
        (["complete-basis", "--family", "2-6b", "--vector", "0,1"], "gram", [[2, 4], [4, 2]]),
        (["cohomology", "--factors", "1,1,1", "--degrees", "1,0,0"], "h", {"0": 2}),
    ],
)
def test_commands(capsys, argv, key, value):
    code, rep, _ = invoke(capsys, *argv)
    assert code == 0 and rep["status"] == "pass"
    assert rep["result"][key] == value


def test_reduced_forms(capsys):
    code, rep, _ = invoke(capsys, "reduced-forms", "--disc", "8")
    assert code == 0 and len(rep["result"]["cycles"]) == 1


def test_mutation_pass_and_fail(capsys):
    base = ["mutation-check", "--factors", "1,1,1", "--E=0,0,0", "--F=-1,0,0", "--G=1,0,0"]
    code, rep, _ = invoke(capsys, *base, "--shift", "-1")
    assert code == 0 and rep["result"]["passed"]
    code, rep, _ = invoke(capsys, *base, "--shift", "0")
    assert code == 1 and rep["status"] == "fail"


def test_check_collection(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"factors": [1, 1, 1], "collection": [[0, 0, 0], [-1, 0, 0]]}))
    code, rep, _ = invoke(capsys, "check-collection", "--file", str(p))
    assert code == 1 and not rep["result"]["passed"]


def test_fm_count_file(capsys, tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"ns": [[2, 0], [0, -6]], "search_bound": 1}))
    code, rep, _ = invoke(capsys, "fm-count", "--file", str(p))
    assert code == 0 and rep["warnings"] and rep["result"]["count"] == 2


@pytest.mark.parametrize(
    "content, argv",
    [
        ('{"gram": [[2, 1], [0, 2]]}', ["disc-group"]),
        ('{"gram": [[2, 1],', ["disc-group"]),
        ('{"gram": [[1, 0], [0, 2]]}', ["invariants"]),
        ('{"gram": [[0, 2, 2], [2, 0, 2], [2, 2, 0]]}', ["orth-group", "--budget", "3"]),
    ],
)
def test_input_errors_exit_2(capsys, tmp_path, content, argv):
    p = tmp_path / "bad.json"
    p.write_text(content)
    code, rep, _ = invoke(capsys, argv[0], "--file", str(p), *argv[1:])
    assert code == 2 and rep["status"] == "error" and rep["error"]["message"]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["isotropic", "--family", "3-1"],
        ["ns-lattice", "--family", "9-9"],
        ["disc-group"],
        ["disc-group", "--file", "/nonexistent.json"],
        ["class-count", "--disc", "16"],
        ["verra-cubic", "--a", "1"],
        ["complete-basis", "--family", "3-1", "--vector", "x"],
    ],
)
def test_usage_errors_are_json(capsys, argv):
    code, rep, _ = invoke(capsys, *argv)
    assert code == 2 and rep["status"] == "error"


def test_deterministic(capsys):
    _, _, a = invoke(capsys, "orth-group", "--family", "3-1")
    _, _, b = invoke(capsys, "orth-group", "--family", "3-1")
    assert a == b


def test_run_returns_report():
    code, rep = run(["class-count", "--disc", "8"])
    assert code == 0 and rep["inputs"]["disc"] == 8


def test_module_entry_point_check_paper():
    proc = subprocess.run([sys.executable, "-m", "fanok3", "check-paper"], capture_output=True, text=True, timeout=300)
    rep = json.loads(proc.stdout)
    assert proc.returncode == 0, rep["result"]["failed"]
    assert rep["status"] == "pass" and rep["result"]["total"] == 11
