from __future__ import annotations

import json
import subprocess
import sys

from smallsum.cli import run_cli


def _run(capsys, *argv):
    code = run_cli(list(argv))
    out = capsys.readouterr().out.strip().splitlines()
    return code, [json.loads(line) for line in out if line]


def test_kappa_command(capsys):
    code, (obj,) = _run(capsys, "kappa", "--group", "6", "--set", "[[0]],[[1]]", "--k", "2")
    assert code == 0 and obj["kappa"] == 1 and obj["separable"]


def test_kappa_modes_agree(capsys):
    _, (a,) = _run(capsys, "kappa", "--group", "2,6", "--set", "[[0,0],[1,1],[0,3]]", "--k", "3", "--mode", "exact")
    _, (b,) = _run(capsys, "kappa", "--group", "2,6", "--set", "[[0,0],[1,1],[0,3]]", "--k", "3", "--mode", "seeded")
    assert a["kappa"] == b["kappa"]


def test_atoms_command(capsys):
    code, (obj,) = _run(capsys, "atoms", "--group", "12", "--set", "[0,1,3,6,9]", "--k", "2")
    assert code == 0
    assert obj["hyper_atoms"] == [[[0], [3], [6], [9]]]
    assert obj["super_atom"] == [[0], [3], [6], [9]]


def test_subgroups_command(capsys):
    code, (obj,) = _run(capsys, "subgroups", "--group", "2,2")
    assert code == 0 and obj["count"] == 5


def test_classify_success_and_hypothesis_error(capsys):
    code, (obj,) = _run(capsys, "classify", "--theorem", "3x3", "--group", "7", "--S", "[0,1,3]", "--T", "[0,1,3]")
    assert code == 0 and obj["verified"] and obj["case"] == "translate"
    code, (obj,) = _run(capsys, "classify", "--theorem", "3x3", "--group", "9", "--S", "[0,1,2]", "--T", "[0,3,6]")
    assert code == 2 and obj["error"] == "hypothesis"


def test_classify_from_instance_file(capsys, tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps({"group": [9], "S": [[0], [1], [3]], "T": [[1], [2], [4]], "mu": 0}))
    code, (obj,) = _run(capsys, "classify", "--theorem", "n3", "--instance", str(path))
    assert code == 0 and set(c["case"] for c in obj["cases"]) == {"i", "ii", "iii"}


def test_verify_writes_jsonl_and_plots(capsys, tmp_path):
    out = tmp_path / "report.jsonl"
    plots = tmp_path / "plots"
    code, records = _run(capsys, "verify", "--theorem", "kneser", "--max-order", "8",
                         "--out", str(out), "--plot-dir", str(plots))
    assert code == 0
    assert records[-1]["type"] == "summary" and records[-1]["pass"]
    assert [json.loads(x) for x in out.read_text().splitlines()] == records
    assert (plots / "kneser_cases.png").stat().st_size > 0


def test_verify_budget_refusal(capsys):
    code, (obj,) = _run(capsys, "verify", "--theorem", "kneser", "--max-order", "10", "--budget", "100")
    assert code == 2 and obj["error"] == "BudgetExceeded"


def test_usage_errors_exit_two(capsys):
    assert run_cli(["nope"]) == 2
    assert run_cli(["kappa", "--group", "6"]) == 2
    code, _ = _run(capsys, "kappa", "--group", "6", "--set", "[]", "--k", "1")
    assert code == 2


def test_minimize_command_rejects_passing_instance(capsys):
    code, (obj,) = _run(capsys, "minimize", "--theorem", "kneser", "--group", "7", "--S", "[0,1]", "--T", "[0,2]")
    assert code == 2 and "does not fail" in obj["message"]


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "smallsum", "verify", "--theorem", "kneser", "--max-order", "10"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout.splitlines()[-1])["pass"]
    assert "checked" in proc.stderr
