import json
from pathlib import Path

import pytest

from treecount.cli import main
from treecount.graphio import parse_text

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    assert run(capsys, "count", "--graph", SAMPLES / "k4.txt") == (0, "16\n", "")
    code, out, _ = run(capsys, "count", "--graph", SAMPLES / "k4.txt", "--json")
    assert json.loads(out) == {"tau": 16}


def test_count_constrained(capsys, tmp_path):
    code, out, _ = run(capsys, "count-constrained", "--graph", SAMPLES / "k4.txt",
                       "--edges", "e1")
    assert (code, out) == (0, "8\n")
    code, out, _ = run(capsys, "count-constrained", "--graph", SAMPLES / "k4.txt",
                       "--edges", "e1", "--enumerate")
    assert out == "8\n"
    part = tmp_path / "m.json"
    part.write_text(json.dumps({"M": ["e1", "e6"]}))
    code, out, _ = run(capsys, "count-constrained", "--graph", SAMPLES / "k4.txt",
                       "--partition", part, "--json")
    assert json.loads(out) == {"tau": 4, "M": ["e1", "e6"]}


def test_construct_round_trips_through_count(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "--graph", SAMPLES / "c4.txt", "--op", "subdivision")
    assert code == 0 and out.startswith("# op: subdivision")
    S = parse_text(out)
    assert (S.order, S.size) == (8, 8)
    petersen = tmp_path / "p.txt"
    code, out, _ = run(capsys, "construct", "--graph", SAMPLES / "k5.txt", "--op", "diamond",
                       "--args", json.dumps({"edges": ["c01", "c12", "c23", "c34", "c04"]}))
    petersen.write_text(out)
    assert run(capsys, "count", "--graph", petersen)[1] == "2000\n"


def test_formula_and_check(capsys):
    code, out, _ = run(capsys, "formula", "--id", "thm510", "--graph", SAMPLES / "k3cut.txt",
                       "--partition", SAMPLES / "k3cut.json", "--check", "--json")
    report = json.loads(out)
    assert code == 0 and report["value"] == 8 and report["match"]
    code, out, _ = run(capsys, "formula", "--id", "cor531", "--graph", SAMPLES / "k4.txt",
                       "--partition", SAMPLES / "k4_partition.json")
    assert (code, out) == (0, "16\n")


def test_mismatch_exit_code(capsys):
    code, out, err = run(capsys, "formula", "--id", "lsub", "--graph", SAMPLES / "k3.txt",
                         "--mode", "printed", "--check")
    assert code == 4 and out == "192\n"
    assert "oracle gives 3" in err


def test_hypothesis_exit_code_and_report_only(capsys):
    code, _, err = run(capsys, "formula", "--id", "eq14", "--graph", SAMPLES / "k3cut.txt")
    assert code == 3 and err.startswith("error:")
    code, out, _ = run(capsys, "formula", "--id", "eq14", "--graph", SAMPLES / "k3cut.txt",
                       "--report-only")
    assert code == 0 and json.loads(out)["ok"] is False
    code, _, _ = run(capsys, "construct", "--graph", SAMPLES / "k4.txt", "--op", "star",
                     "--args", '{"W": []}')
    assert code == 3


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("v a\ne a zz\n")
    assert run(capsys, "count", "--graph", bad)[0] == 2
    assert run(capsys, "count", "--graph", tmp_path / "missing.txt")[0] == 2
    assert run(capsys, "count-constrained", "--graph", SAMPLES / "k4.txt",
               "--edges", "nope")[0] == 2
    assert run(capsys, "tutte-experiment", "--point", "1")[0] == 2
    assert run(capsys, "construct", "--graph", SAMPLES / "k4.txt", "--op", "bullet",
               "--args", "[1]")[0] == 2


def test_cap_exit_code(capsys):
    code, _, err = run(capsys, "count-constrained", "--graph", SAMPLES / "k5.txt",
                       "--enumerate", "--cap", "10")
    assert code == 5 and "error:" in err
    assert run(capsys, "tutte", "--graph", SAMPLES / "k5.txt", "--edge-cap", "5")[0] == 5


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--formula", "moon", "--trials", "10", "--no-timing")
    report = json.loads(out)
    assert code == 0 and report["ok"] and report["passed"] == 10 and "elapsed" not in report
    code, out, _ = run(capsys, "verify", "--formula", "lsub", "--mode", "printed",
                       "--trials", "5", "--seed", "1")
    assert code == 1 and json.loads(out)["failures"]


def test_tutte_commands(capsys):
    assert run(capsys, "tutte", "--graph", SAMPLES / "k3.txt") == (0, "x^2 + x + y\n", "")
    assert run(capsys, "tutte", "--graph", SAMPLES / "k4.txt", "--at", "1,1")[1] == "16\n"
    code, out, _ = run(capsys, "tutte-experiment", "--trials", "0")
    assert code == 0
    assert json.loads(out) == {"point": [0, -1], "trials": 0, "equal_count": 0,
                               "counterexamples": []}
    code, out, _ = run(capsys, "tutte-experiment", "--trials", "5", "--point", "1,1",
                       "--grid", "2,2")
    report = json.loads(out)
    assert report["equal_count"] == 5 and report["grid"][0]["equal_count"] == 5


def test_argparse_rejects_unknown_ids():
    with pytest.raises(SystemExit) as info:
        main(["formula", "--id", "thm99", "--graph", "x"])
    assert info.value.code == 2
