import json

import pytest

from moonpipes.cli import EXIT_FINDING, EXIT_OK, EXIT_USAGE, main
from moonpipes.pipedream import rc_brute_force

TEN_TEXT = ".##.\n####\n####\n.##.\n"


@pytest.fixture
def ten(tmp_path):
    path = tmp_path / "ten.txt"
    path.write_text(TEN_TEXT)
    return str(path)


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_enumerate(ten, tmp_path, capsys):
    assert main(["enumerate", "--shape", ten, "--k", "1"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "10 fillings"
    assert main(["enumerate", "--staircase", "5", "--k", "1"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "5 fillings"
    cell = tmp_path / "cell.txt"
    cell.write_text("#\n")
    assert main(["enumerate", "--shape", str(cell), "--k", "1"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1 filling"


def test_enumerate_json_and_rows(ten, capsys):
    code, doc = run_json(capsys, "enumerate", "--shape", ten, "--k", "1", "--show", "--method", "both")
    assert code == EXIT_OK and doc["count"] == 10 and len(doc["fillings"]) == 10
    # the ten fillings split by zeros per row
    counts = [
        run_json(capsys, "enumerate", "--shape", ten, "--k", "1", "--rows", r)[1]["count"]
        for r in ("1,3,1,0", "1,3,0,1", "1,2,2,0", "1,2,1,1", "1,1,3,0", "1,1,2,1", "1,0,3,1", "0,3,1,1", "0,2,2,1", "0,1,3,1")
    ]
    assert counts == [1] * 10
    assert run_json(capsys, "enumerate", "--shape", ten, "--k", "1", "--rows", "5,0,0,0")[1]["count"] == 0


def test_input_errors(tmp_path, capsys):
    assert main(["enumerate", "--shape", str(tmp_path / "missing.txt"), "--k", "1"]) == EXIT_USAGE
    bad = tmp_path / "bad.txt"
    bad.write_text("#.#\n")
    assert main(["enumerate", "--shape", str(bad), "--k", "1"]) == EXIT_USAGE
    assert main(["enumerate", "--k", "1"]) == EXIT_USAGE
    assert main(["enumerate", "--staircase", "5", "--k", "-1"]) == EXIT_USAGE
    assert main(["schubert", "--perm", "1,1,2"]) == EXIT_USAGE
    assert main(["enumerate", "--staircase", "5", "--k", "1", "--rows", "a,b"]) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_poset_perm(tmp_path, capsys):
    dot = tmp_path / "out.dot"
    code, doc = run_json(capsys, "poset", "--perm", "1,2,6,4,5,3", "--dot", str(dot))
    assert code == EXIT_OK
    assert doc["nodes"] == len(rc_brute_force((1, 2, 6, 4, 5, 3)))
    assert doc["extremes_are_bb"]
    assert dot.read_text().count("label=") == doc["nodes"]
    code, doc = run_json(capsys, "poset", "--perm", "1,2,3,4")
    assert code == EXIT_OK and doc["nodes"] == 1
    assert main(["poset", "--perm", "7,6,5,4,3,2,1"]) == EXIT_USAGE


def test_poset_shape(ten, tmp_path, capsys):
    dot = tmp_path / "ten.dot"
    code, doc = run_json(capsys, "poset", "--shape", ten, "--k", "1", "--dot", str(dot))
    assert code == EXIT_OK
    assert doc["fillings"] == 10 and doc["interval"]
    assert doc["maximum_is_d_top"] and doc["minimum_is_d_bot"]
    assert dot.read_text().count("fillcolor") == 10
    assert main(["poset", "--shape", ten]) == EXIT_USAGE


def test_lattice_check(capsys):
    code, doc = run_json(capsys, "lattice-check", "--all-sn", "3")
    assert code == EXIT_OK and len(doc["verdicts"]) == 1 + 2 + 6
    assert all(v["lattice"] for v in doc["verdicts"])
    code, doc = run_json(capsys, "lattice-check", "--perm", "5,4,3,2,1")
    assert code == EXIT_OK and doc["verdicts"] == [{"w": [5, 4, 3, 2, 1], "lattice": True}]
    assert main(["lattice-check", "--all-sn", "6"]) == EXIT_USAGE
    assert main(["lattice-check"]) == EXIT_USAGE


def test_schubert(capsys):
    code, doc = run_json(capsys, "schubert", "--perm", "2,1,4,3", "--oracle")
    assert code == EXIT_OK
    assert doc["text"] == "x1^2 + x1*x2 + x1*x3"
    assert doc["oracle_agrees"]


def test_eg(tmp_path, capsys):
    code, doc = run_json(capsys, "eg", "--staircase", "5", "--k", "1")
    assert code == EXIT_OK and doc["fillings"] == 5
    assert doc["check"]["checks"]["bijection"]
    shape = tmp_path / "moon.txt"
    shape.write_text(".##\n.##\n###\n###\n")
    code, doc = run_json(capsys, "eg", "--shape", str(shape), "--k", "1")
    assert code == EXIT_OK and doc["check"] is None
    assert doc["P"] == {"rows": [[3, 4, 5], [5]]}


def test_count(capsys):
    code, doc = run_json(capsys, "count", "--n", "8", "--k", "2", "--method", "determinant")
    assert code == EXIT_OK and doc["value"] == 84
    code, doc = run_json(capsys, "count", "--n", "5", "--k", "1", "--reading", "square")
    assert code == EXIT_FINDING and doc["value"] == "25/3"
    assert main(["count", "--n", "4", "--k", "2"]) == EXIT_USAGE


def test_verify_subset(capsys):
    code, doc = run_json(capsys, "verify", "--only", "1,2,9")
    assert code == EXIT_OK
    assert [c["criterion"] for c in doc["criteria"]] == [1, 2, 9]
    assert all(c["passed"] and c["seconds"] >= 0 for c in doc["criteria"])
    assert main(["verify", "--only", "99"]) == EXIT_USAGE
