"""Theorem runs and the verification report.

A theorem is ``verified`` when its system matches the bundled reference and
its certificate checks: every family has zero residuals and a witness, or the
infeasibility proof replays.  ``refuted`` means a residual or a replay step
concretely failed; ``inconclusive`` means a search or computation ran out of
budget.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .certify import PROOF_FORMAT, Budget, InfeasibilityProof, ProofError, prove_infeasible, verify_proof
from .families import verify_family
from .groebner import DEFAULT_MAX_PAIRS, ResourceLimitError
from .reference import Discrepancy, all_discrepancies, check_system
from .registry import Theorem, get_theorem, load_registry

SCHEMA = "lorentz-solitons.report/1"
VERIFIED, REFUTED, INCONCLUSIVE = "verified", "refuted", "inconclusive"


def budget_from_env() -> Budget:
    return Budget(
        max_pairs=int(os.environ.get("LORENTZ_SOLITONS_MAX_PAIRS", DEFAULT_MAX_PAIRS)),
        max_depth=int(os.environ.get("LORENTZ_SOLITONS_MAX_DEPTH", Budget().max_depth)),
    )


@dataclass
class TheoremResult:
    id: str
    group: str
    kind: str
    verdict: str
    status: str
    reference_match: bool
    certificate: dict
    detail: str = ""
    notes: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "id": self.id, "group": self.group, "kind": self.kind,
            "verdict": self.verdict, "status": self.status,
            "reference_match": self.reference_match,
            "certificate": self.certificate, "detail": self.detail, "notes": self.notes,
        }


@dataclass
class RunReport:
    seed: int
    results: list[TheoremResult] = field(default_factory=list)
    discrepancies: list[Discrepancy] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return bool(self.results)

    @property
    def ok(self) -> bool:
        return (self.valid and all(r.status == VERIFIED for r in self.results)
                and all(d.whitelisted for d in self.discrepancies))

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def counts(self) -> dict[str, int]:
        out = {VERIFIED: 0, REFUTED: 0, INCONCLUSIVE: 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def to_json(self) -> dict:
        doc = {
            "schema": SCHEMA,
            "engine": {"lorentz_solitons": __version__, "proof_format": PROOF_FORMAT},
            "seed": self.seed,
            "valid": self.valid,
        }
        if not self.valid:
            doc["error"] = "no theorems were run"
            doc["theorems"] = []
            return doc
        doc["ok"] = self.ok
        doc["summary"] = {
            **self.counts(),
            "infeasible": sum(r.verdict == "infeasible" for r in self.results),
            "families": sum(r.verdict == "families" for r in self.results),
        }
        doc["theorems"] = [r.to_json() for r in self.results]
        doc["discrepancies"] = [d.to_json() for d in self.discrepancies]
        return doc


def _families_certificate(t: Theorem, seed: int) -> tuple[str, dict, str]:
    system = t.system()
    rows, status, detail = [], VERIFIED, ""
    for fam in t.families:
        for rep in verify_family(system, fam, seed):
            rows.append(rep.to_json())
            if not rep.residuals_ok:
                status = REFUTED
                k, r = rep.first_residual
                detail = detail or f"family {rep.label}: residual ({k}) = {r}"
            elif rep.witness is None and status == VERIFIED:
                status = INCONCLUSIVE
                detail = detail or f"family {rep.label}: no witness within budget"
    return status, {"type": "families", "families": rows}, detail


def _proof_certificate(t: Theorem, proof_text: str | None, budget: Budget) -> tuple[str, dict, str]:
    system = t.system()
    cert: dict = {"type": "infeasibility_proof", "file": t.proof}
    try:
        if proof_text is None:
            try:
                proof_text = t.proof_text()
            except (FileNotFoundError, OSError):
                proof = prove_infeasible(system, budget, theorem=t.id)
                if proof is None:
                    return INCONCLUSIVE, cert, "no bundled proof and search exhausted its budget"
                cert["file"] = None
                cert["searched"] = True
                proof_text = proof.dumps()
        proof = InfeasibilityProof.loads(proof_text)
        verify_proof(proof, system)
    except ResourceLimitError as exc:
        return INCONCLUSIVE, cert, f"replay ran out of budget: {exc}"
    except (ProofError, ValueError) as exc:
        return REFUTED, cert, f"proof rejected: {exc}"
    cert["steps"] = [s.op for s in proof.steps()]
    cert["branches"] = len(proof.branches)
    return VERIFIED, cert, ""


def run_theorem(tid: str, *, seed: int = 0, proof_text: str | None = None,
                budget: Budget | None = None) -> TheoremResult:
    """Run one registered theorem end to end; failures land in the result."""
    t = get_theorem(tid)
    budget = budget or budget_from_env()
    try:
        ref = check_system(t.group, t.kind)
        match_ok = ref.ok
        if t.verdict == "families":
            status, cert, detail = _families_certificate(t, seed)
        else:
            status, cert, detail = _proof_certificate(t, proof_text, budget)
    except ResourceLimitError as exc:
        return TheoremResult(t.id, t.group, t.kind, t.verdict, INCONCLUSIVE, False, {},
                             f"out of budget: {exc}", dict(t.notes))
    if not match_ok and status == VERIFIED:
        status = REFUTED
        detail = "assembled system does not match the reference transcription"
    return TheoremResult(t.id, t.group, t.kind, t.verdict, status, match_ok, cert, detail,
                         dict(t.notes))


def run(ids: list[str] | None = None, *, seed: int = 0,
        proof_overrides: dict[str, str] | None = None,
        budget: Budget | None = None) -> RunReport:
    """Run the given theorems (default: all registered) and collect discrepancies."""
    if ids is None:
        ids = [t.id for t in load_registry()]
    overrides = proof_overrides or {}
    report = RunReport(seed)
    for tid in ids:
        report.results.append(run_theorem(tid, seed=seed, proof_text=overrides.get(tid),
                                          budget=budget))
    pairs = sorted({(r.group, r.kind) for r in report.results})
    report.discrepancies = all_discrepancies(pairs)
    return report


def emit_report(report: RunReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
    if fmt == "markdown":
        return _markdown(report)
    raise ValueError(f"unknown report format {fmt!r}")


def _markdown(report: RunReport) -> str:
    lines = ["# Verification report", "",
             f"schema `{SCHEMA}`, engine {__version__}, seed {report.seed}", ""]
    if not report.valid:
        lines += ["**Invalid report: no theorems were run.**", "",
                  "| theorem | status |", "|---|---|", ""]
        return "\n".join(lines)
    c = report.counts()
    lines += [f"Overall: **{'OK' if report.ok else 'FAILED'}** "
              f"({c[VERIFIED]} verified, {c[REFUTED]} refuted, {c[INCONCLUSIVE]} inconclusive)", "",
              "| theorem | group | kind | verdict | status | reference | certificate |",
              "|---|---|---|---|---|---|---|"]
    for r in report.results:
        if r.verdict == "families":
            fams = r.certificate.get("families", [])
            fields = sorted({f["witness_field"] or "none" for f in fams})
            n = len({f["label"] for f in fams})
            cert = f"{n} famil{'y' if n == 1 else 'ies'}, witnesses in {', '.join(fields)}"
        else:
            cert = " / ".join(r.certificate.get("steps", [])) or "none"
        lines.append(f"| {r.id} | {r.group} | {r.kind} | {r.verdict} | {r.status} | "
                     f"{'match' if r.reference_match else 'MISMATCH'} | {cert} |")
    problems = [r for r in report.results if r.detail]
    if problems:
        lines += ["", "## Failures", ""]
        lines += [f"- {r.id}: {r.detail}" for r in problems]
    notes = [(r.id, k, v) for r in report.results for k, v in sorted(r.notes.items())]
    if notes:
        lines += ["", "## Notes", ""]
        lines += [f"- {tid} {label}: {text}" for tid, label, text in notes]
    lines += ["", "## Discrepancies with the reference tables", ""]
    if not report.discrepancies:
        lines.append("none")
    else:
        lines += ["| group | kind | entry | printed | computed | whitelisted |",
                  "|---|---|---|---|---|---|"]
        for d in report.discrepancies:
            lines.append(f"| {d.group} | {d.kind} | {d.where} | `{d.printed}` | "
                         f"`{d.computed}` | {'yes' if d.whitelisted else 'NO'} |")
    return "\n".join(lines) + "\n"


def load_proof_file(path: str | Path) -> str:
    return Path(path).read_text()
