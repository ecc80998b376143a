import json
import subprocess
import sys

import pytest

from semireg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, obj, name="cfg.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_cohomology_from_config(tmp_path, capsys):
    cfg = write(tmp_path, {"atlas": "P1", "bundle": {"line": 2}, "command": "cohomology",
                           "seed": 1, "weight_window": [-3, 3]})
    code, out, err = run(capsys, "cohomology", "--config", cfg)
    assert code == 0
    rep = json.loads(out)
    assert rep["cohomology"]["0"]["dim"] == 3
    assert rep["cohomology"]["1"]["dim"] == 0
    assert "elapsed" in err and "elapsed" not in out


def test_report_keys_sorted_and_deterministic(tmp_path, capsys):
    cfg = write(tmp_path, {"atlas": "P1", "command": "verify", "seed": 3, "samples": 2})
    code1, out1, _ = run(capsys, "verify", "--config", cfg)
    code2, out2, _ = run(capsys, "verify", "--config", cfg)
    assert code1 == code2 == 0
    assert out1 == out2
    rep = json.loads(out1)
    assert list(rep) == sorted(rep)
    assert out1 == json.dumps(rep, sort_keys=True, indent=1) + "\n"


def test_chern_and_out_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "chern", "--out", str(out_path), "--seed", "2")
    assert code == 0 and out == ""
    rep = json.loads(out_path.read_text())
    # default P1 bundle is O + O(2)[-1]; the supertrace counts O(2) with a minus sign
    assert rep["chern"]["coordinate"] == "-2"


def test_chern_of_sum(tmp_path, capsys):
    cfg = write(tmp_path, {"atlas": "P2", "bundle": {"sum": [{"line": 1}, {"line": -3}]},
                           "command": "chern"})
    code, out, _ = run(capsys, "chern", "--config", cfg)
    assert code == 0
    assert json.loads(out)["chern"]["coordinate"] == "-2"


def test_semireg_p2(capsys):
    cfg_args = ["semireg", "--samples", "10", "--window", "-3..3"]
    code, out, _ = run(capsys, *cfg_args)
    assert code == 0
    rep = json.loads(out)
    assert rep["semireg"]["h2_end"] == 0


def test_flags_override_config(tmp_path, capsys):
    cfg = write(tmp_path, {"atlas": "P2", "bundle": {"line": -3}, "command": "cohomology",
                           "seed": 0, "weight_window": [-4, 4], "degrees": [2]})
    code, out, _ = run(capsys, "cohomology", "--config", cfg, "--seed", "9", "--window", "-4..4")
    assert code == 0
    rep = json.loads(out)
    assert rep["config"]["seed"] == 9
    assert rep["cohomology"]["2"]["dim"] == 1


@pytest.mark.parametrize("payload", [
    "{not json",
    {"atlas": "P1", "command": "cohomology", "colour": "blue"},
    {"atlas": "P5", "command": "cohomology"},
    {"atlas": "P1", "command": "chern"},
    {"atlas": "P1", "command": "cohomology", "bundle": {"line": "two"}},
    {"atlas": "P1", "command": "cohomology", "seed": "x"},
    [1, 2],
])
def test_input_errors_exit_2(tmp_path, capsys, payload):
    cfg = write(tmp_path, payload if isinstance(payload, str) else json.dumps(payload))
    code, _, err = run(capsys, "cohomology", "--config", cfg)
    assert code == 2
    assert "input error" in err


def test_bad_window_and_flags(capsys, tmp_path):
    assert run(capsys, "cohomology", "--window", "3-4")[0] == 2
    assert run(capsys, "cohomology", "--window", "3..-4")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "cohomology", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_unstable_window_fails(tmp_path, capsys):
    cfg = write(tmp_path, {"atlas": "P1", "bundle": {"line": 5}, "command": "cohomology"})
    code, out, _ = run(capsys, "cohomology", "--config", cfg, "--window", "-1..1")
    assert code == 1
    (check,) = json.loads(out)["checks"]
    assert check["id"] == "window_stability" and not check["passed"]
    assert "not stable" in check["detail"]


@pytest.mark.parametrize("mutation", ["f2_sign", "koszul"])
def test_mutation_exit_1(capsys, mutation):
    code, out, _ = run(capsys, "verify", "--samples", "3", "--mutation", mutation)
    assert code == 1
    rep = json.loads(out)
    bad = [c for c in rep["checks"] if not c["passed"]]
    assert len(bad) == 1
    assert bad[0]["id"].startswith("linf_f_trace_neg_")


def test_module_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "semireg", "cohomology", "--window", "-2..2",
                           "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["command"] == "cohomology"
