"""Command-line behavior: subcommands, outputs, and the exit-code contract
(0 verified/confirmed, 1 usage or I/O error, 2 mathematical failure)."""

import json

import pytest

import spreadlab.experiments as ex
from spreadlab.cli import main


def test_tower(capsys):
    assert main(["tower", "--p", "3", "--n", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["p"] == 3 and doc["e"] == 1 and doc["n"] == 2
    assert {"defining_poly", "gamma", "beta"} <= set(doc)


def test_usage_errors_exit_1():
    with pytest.raises(SystemExit) as ei:
        main([])
    assert ei.value.code == 1
    with pytest.raises(SystemExit) as ei:
        main(["experiment"])                # missing name
    assert ei.value.code == 1
    with pytest.raises(SystemExit) as ei:
        main(["build", "nonsense", "--p", "3"])
    assert ei.value.code == 1


def test_build_and_verify_typec(tmp_path, capsys):
    out = str(tmp_path / "s.json")
    assert main(["build", "typec", "--p", "3", "--n", "3", "--out", out]) == 0
    msg = capsys.readouterr().out
    assert "28 components" in msg and "kernel 3" in msg
    assert main(["verify", out]) == 0
    assert "verified spread, 28 components, kernel 3" in capsys.readouterr().out


def test_build_typeh(tmp_path, capsys):
    out = str(tmp_path / "h.json")
    assert main(["build", "typeh", "--p", "3", "--n", "3", "--out", out]) == 0
    assert main(["verify", out]) == 0
    assert "28 components" in capsys.readouterr().out


def test_build_even3_defaults(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["build", "even3", "--p", "2"]) == 0     # n defaults to 3
    msg = capsys.readouterr().out
    assert "9 components" in msg and "even3-spread.json" in msg
    assert main(["verify", "even3-spread.json"]) == 0
    assert "kernel 8" in capsys.readouterr().out


def test_build_failures_exit_1(capsys):
    assert main(["build", "typec", "--p", "2", "--n", "3"]) == 1   # even q
    assert main(["build", "typec", "--p", "3", "--n", "3", "--delta", "1"]) == 1
    assert main(["build", "even3", "--p", "2", "--n", "4"]) == 1
    assert main(["build", "typec", "--p", "3"]) == 1               # missing --n
    capsys.readouterr()


def test_verify_detects_tampering(tmp_path, capsys):
    out = str(tmp_path / "t.json")
    assert main(["build", "typec", "--p", "3", "--n", "3", "--out", out]) == 0
    with open(out) as fh:
        doc = json.load(fh)
    doc["components"][1] = doc["components"][2]          # duplicate component
    bad = str(tmp_path / "bad.json")
    with open(bad, "w") as fh:
        json.dump(doc, fh)
    assert main(["verify", bad]) == 2
    assert "NOT a spread" in capsys.readouterr().out


def test_verify_detects_kernel_mismatch(tmp_path, capsys):
    out = str(tmp_path / "k.json")
    assert main(["build", "even3", "--p", "2", "--out", out]) == 0
    with open(out) as fh:
        doc = json.load(fh)
    doc["kernel"] = 2
    with open(out, "w") as fh:
        json.dump(doc, fh)
    assert main(["verify", out]) == 2
    assert "kernel is 8" in capsys.readouterr().out


def test_verify_io_errors_exit_1(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "missing.json")]) == 1
    garbled = str(tmp_path / "garbled.json")
    with open(garbled, "w") as fh:
        fh.write("{not json")
    assert main(["verify", garbled]) == 1
    capsys.readouterr()


def test_experiment_confirmed(tmp_path, capsys):
    out = str(tmp_path / "odd.json")
    code = main(["experiment", "no-typec-odd", "--q", "3", "--n", "2",
                 "--out", out])
    assert code == 0
    msg = capsys.readouterr().out
    assert "confirmed" in msg and "648 candidates" in msg
    with open(out) as fh:
        assert json.load(fh)["verdict"] == "confirmed"
    assert (tmp_path / "odd.csv").exists()


def test_experiment_counterexample_exit_2(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(ex, "permutes_cosets", lambda Q: True)
    out = str(tmp_path / "forced.json")
    code = main(["experiment", "no-typec-odd", "--q", "3", "--n", "2",
                 "--out", out])
    assert code == 2
    assert "counterexample" in capsys.readouterr().out


def test_experiment_errors_exit_1(tmp_path, capsys):
    assert main(["experiment", "frobnicate",
                 "--out", str(tmp_path / "x.json")]) == 1
    assert main(["experiment", "no-typec-odd", "--q", "2", "--n", "2",
                 "--out", str(tmp_path / "y.json")]) == 1
    capsys.readouterr()
