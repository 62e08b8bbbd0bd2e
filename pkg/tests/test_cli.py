import json

import pytest

from lorentz_solitons.cli import main
from lorentz_solitons.registry import get_theorem


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_list(capsys):
    code, out = run_cli(capsys, "list")
    assert code == 0 and "3.15  G7 C3" in out and "G1 G2 G3" in out


def test_tensors_json(capsys):
    code, out = run_cli(capsys, "tensors", "--group", "G6", "--kind", "C1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["group"] == "G6" and doc["kind"] == "C1"
    assert doc["rho_tilde"][1][1] == "-alpha^2"
    assert doc["connection"]["kind"] == "C1"


def test_tensors_text(capsys):
    code, out = run_cli(capsys, "tensors", "--group", "abelian", "--kind", "C2")
    assert code == 0 and "nabla_e3 e3 = (lbar)*e3" in out


def test_tensors_custom_file(capsys, tmp_path):
    f = tmp_path / "h.liealg"
    f.write_text("[algebra]\nname = H\n[params]\nalpha\n[brackets]\n[e1,e2] = alpha*e3\n"
                 "[e1,e3] = 0\n[e2,e3] = 0\n")
    code, out = run_cli(capsys, "tensors", "--group", str(f), "--kind", "C0")
    assert code == 0 and out.startswith("# H C0")


def test_system_reference_check(capsys):
    code, out = run_cli(capsys, "system", "--group", "G1", "--kind", "C0", "--paper-check")
    assert code == 0 and "strict bijection" in out
    code, out = run_cli(capsys, "system", "--group", "G3", "--kind", "C0", "--reference-check", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and len(doc["discrepancies"]) == 2


def test_system_plain(capsys):
    code, out = run_cli(capsys, "system", "--group", "G1", "--kind", "C0")
    assert code == 0 and "(3,3): -2*lam = 0" in out


def test_verify_and_proof_override(capsys, tmp_path):
    code, out = run_cli(capsys, "verify", "--theorem", "2.4")
    assert code == 0 and "verified" in out
    bad = json.loads(get_theorem("2.4").proof_text())
    bad["kind"] = "C1"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    code, out = run_cli(capsys, "verify", "--theorem", "2.4", "--proof", str(p))
    assert code == 1 and "refuted" in out
    assert main(["verify", "--theorem", "7.7"]) == 2


def test_prove_infeasible_emit(capsys, tmp_path):
    dest = tmp_path / "p.json"
    code, _ = run_cli(capsys, "prove-infeasible", "--group", "G2", "--kind", "C2", "--emit", str(dest))
    assert code == 0
    code, out = run_cli(capsys, "verify", "--theorem", "3.4", "--proof", str(dest))
    assert code == 0


def test_sample(capsys):
    code, out = run_cli(capsys, "sample", "--group", "G1", "--kind", "C2", "--points", "5",
                        "--seed", "2", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["points"] == 5 and doc["max_residual"] < 1e-9


def test_report_to_file(capsys, tmp_path):
    dest = tmp_path / "r.md"
    code, _ = run_cli(capsys, "report", "--format", "markdown", "--output", str(dest))
    assert code == 0 and "Overall: **OK**" in dest.read_text()


def test_budget_env_var(capsys, monkeypatch):
    monkeypatch.setenv("LORENTZ_SOLITONS_MAX_PAIRS", "0")
    code, _ = run_cli(capsys, "prove-infeasible", "--group", "G2", "--kind", "C0")
    assert code == 1


def test_bad_arguments():
    with pytest.raises(SystemExit):
        main(["tensors", "--group", "G1", "--kind", "C7"])
    assert main(["sample", "--group", "G1", "--kind", "C2", "--points", "0"]) == 2
