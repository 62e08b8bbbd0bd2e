import json

import pytest

from lorentz_solitons.harness import (
    INCONCLUSIVE, REFUTED, SCHEMA, VERIFIED, emit_report, run, run_theorem,
)
from lorentz_solitons.certify import Budget
from lorentz_solitons.registry import get_theorem


def test_run_theorem_examples():
    r = run_theorem("2.2")
    assert r.status == VERIFIED and r.certificate["type"] == "infeasibility_proof"
    r = run_theorem("2.14")
    assert r.status == VERIFIED and len(r.certificate["families"]) == 3
    r = run_theorem("3.15")
    assert r.status == VERIFIED and len(r.certificate["families"]) == 5


def test_full_run():
    rep = run()
    assert rep.counts() == {VERIFIED: 28, REFUTED: 0, INCONCLUSIVE: 0}
    doc = rep.to_json()
    assert doc["summary"]["infeasible"] == 10 and doc["summary"]["families"] == 18
    assert rep.exit_code == 0


def test_report_is_deterministic():
    assert emit_report(run(["2.12", "3.3"]), "json") == emit_report(run(["2.12", "3.3"]), "json")


def test_empty_run_is_an_error_document():
    rep = run([])
    doc = json.loads(emit_report(rep))
    assert doc["valid"] is False and doc["theorems"] == [] and "error" in doc
    assert doc["schema"] == SCHEMA
    assert rep.exit_code != 0
    assert "Invalid report" in emit_report(rep, "markdown")


def test_corrupted_proof_is_refuted():
    d = json.loads(get_theorem("3.3").proof_text())
    d["branches"][0]["steps"] = d["branches"][0]["steps"][-1:]
    rep = run(["3.3"], proof_overrides={"3.3": json.dumps(d)})
    (r,) = rep.results
    assert r.status == REFUTED and "proof rejected" in r.detail
    assert rep.exit_code == 1


def test_missing_proof_falls_back_to_search(monkeypatch):
    from lorentz_solitons.registry import Theorem

    def missing(self):
        raise FileNotFoundError(self.proof)

    monkeypatch.setattr(Theorem, "proof_text", missing)
    r = run_theorem("2.4", budget=Budget(max_pairs=0))
    assert r.status == INCONCLUSIVE and "budget" in r.detail
    r = run_theorem("2.4")
    assert r.status == VERIFIED and r.certificate["searched"]


def test_markdown_contents():
    md = emit_report(run(["2.6", "2.7"]), "markdown")
    assert "| 2.6 | G3 | C0 | families | verified |" in md
    assert "ricci 11" in md and "Discrepancies" in md
    with pytest.raises(ValueError):
        emit_report(run(["2.6"]), "html")
