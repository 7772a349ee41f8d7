import csv
import json
import subprocess
import sys

import pytest

from neutralstab import report
from neutralstab.cli import main
from neutralstab.polycore import rat
from neutralstab.stability import build_condition_i, build_condition_iii
from neutralstab.systemfile import bundled_systems, load_system

EXPECTED_EXIT = {
    "ex1": 0, "ex2": 0, "ex3": 0, "ex4": 0, "ex5": 1, "ex5_retarded": 1, "cor1": 0, "cor2": 0,
}


def test_bundled_corpus_listing():
    assert sorted(bundled_systems()) == sorted(EXPECTED_EXIT)


@pytest.mark.parametrize("name", sorted(EXPECTED_EXIT))
def test_exit_codes_for_corpus(name, capsys):
    assert main(["analyze", name]) == EXPECTED_EXIT[name]
    out = capsys.readouterr().out
    assert "verdict:" in out


def test_examples_dir_path_resolves_to_bundled_file(capsys):
    assert main(["analyze", "examples/ex3.json"]) == 0
    assert "delay-independent stable" in capsys.readouterr().out


def test_ex5_prints_bound(capsys):
    assert main(["analyze", "ex5"]) == 1
    out = capsys.readouterr().out
    assert "T = 0.143719" in out


def test_singular_file_exits_2(tmp_path, capsys):
    p = tmp_path / "sing.json"
    p.write_text(json.dumps({"n": 1, "N": 1, "A0": [["-1"]], "A": [[["0"]]], "B": [[["1"]]]}))
    assert main(["analyze", str(p)]) == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize(
    "text",
    ["{", '{"n": 2, "N": 1, "A0": [["1"]]}', '{"n": 1, "N": 1, "A0": [["x"]]}', '{"n": 1, "A0": [[1]], "Q": 1}', "[]"],
)
def test_malformed_file_exits_2(tmp_path, text):
    p = tmp_path / "bad.json"
    p.write_text(text)
    assert main(["analyze", str(p)]) == 2


def test_missing_file_exits_2():
    assert main(["analyze", "/nonexistent/system.json"]) == 2


def test_decimal_entries_are_exact(tmp_path):
    p = tmp_path / "dec.json"
    p.write_text('{"n": 1, "N": 1, "A0": [[-1]], "A": [[[0.0005]]], "B": [[["0.1"]]]}')
    from neutralstab.systemfile import load_system as load

    s = load(p)
    assert s.A[0][0][0] == rat("0.0005") and s.B[0][0][0] == rat("0.1")


def test_json_report_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["analyze", "ex3", "--json", str(a)]) == 0
    assert main(["analyze", "ex3", "--json", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_json_report_round_trips_polynomials(tmp_path):
    out = tmp_path / "r.json"
    assert main(["analyze", "ex4", "--json", str(out)]) == 0
    doc = report.load_report(out.read_text())
    s = load_system("ex4")
    f, g = build_condition_i(s)
    F, G = build_condition_iii(s)
    assert doc["condition_i"]["f"] == f and doc["condition_i"]["g"] == g
    assert doc["condition_iii"]["F"] == F and doc["condition_iii"]["G"] == G
    assert doc["verdict"]["delay_independent_stable"] is True


def test_json_to_stdout(capsys):
    assert main(["analyze", "ex5", "--json", "-"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"]["delay_bound_T"] == pytest.approx(0.14371, abs=1e-3)
    assert len(doc["condition_iii"]["witnesses"]) == 12


def test_set_parameter(capsys):
    assert main(["analyze", "ex1", "--set", "alpha=2.1"]) == 1
    assert main(["analyze", "ex1", "--set", "alpha=-0.5"]) == 0


def test_sweep_with_negative_range(capsys):
    assert main(["sweep", "ex2", "--param", "alpha", "--range", "-1.5:1.5", "--steps", "7"]) == 0
    out = capsys.readouterr().out
    section = out.split("endpoints:")[1].split("stable regions:")[0]
    ends = [float(line.split()[0]) for line in section.strip().splitlines()]
    assert ends == pytest.approx([-1.0, 1.0], abs=1e-3)


def test_sweep_degenerate_range(capsys):
    assert main(["sweep", "ex2", "--param", "alpha", "--range", "0.5:0.5"]) == 0
    out = capsys.readouterr().out
    assert "1 grid points" in out and "stable" in out


def test_sweep_bad_param_exits_2():
    assert main(["sweep", "ex2", "--param", "gamma", "--range", "0:1"]) == 2
    assert main(["sweep", "ex2", "--param", "A1[3,3]", "--range", "0:1"]) == 2
    assert main(["sweep", "ex2", "--param", "alpha", "--range", "0-1"]) == 2


def test_sweep_json(tmp_path):
    out = tmp_path / "s.json"
    assert main(["sweep", "cor2", "--param", "c", "--range", "-0.9:0.9", "--steps", "7", "--json", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [round(t["estimate"], 3) for t in doc["transitions"]] == [0.333]


@pytest.mark.parametrize("tau,label", [("0.1", "decaying"), ("0.2", "growing")])
def test_simulate_ex5(tau, label, capsys):
    assert main(["simulate", "ex5", "--tau", tau]) == 0
    assert capsys.readouterr().out.strip().splitlines()[-1] == label


def test_simulate_writes_csv(tmp_path, capsys):
    out = tmp_path / "traj.csv"
    assert main(["simulate", "ex4", "--tau", "1.0", "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip().endswith("decaying")
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["time", "norm", "x1", "x2", "x3"]
    assert float(rows[1][0]) == 0.0 and len(rows) > 100


def test_simulate_step_mismatch_exits_2():
    assert main(["simulate", "ex4", "--tau", "1.0", "--step", "0.03"]) == 2


def test_usage_error_exits_2():
    assert main(["frobnicate"]) == 2
    assert main(["analyze"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "neutralstab", "analyze", "ex3"], capture_output=True, text=True)
    assert proc.returncode == 0 and "delay-independent stable" in proc.stdout
